#pragma once

#include <string>
#include <vector>

// Excited (cookie) random walk parameters.  A site carries M cookies; the
// j-th visit to a site steps right with probability p_j while cookies remain,
// and with probability 1/2 afterwards.  The single number
//     delta = sum_j (2 p_j - 1)
// (the total drift stored in one cookie stack) classifies the walk:
// |delta| <= 1 recurrent, |delta| > 1 transient, and the limiting speed is
// nonzero exactly when |delta| > 2.

namespace erw {

class CookieEnvironment {
public:
    // Throws std::invalid_argument if the list is empty or any entry is
    // outside [0,1].  Endpoint values 0 and 1 are allowed: the interesting
    // gap maximizer sits on the p3 = 1 face, and every formula here extends
    // continuously to the closed cube.
    explicit CookieEnvironment(std::vector<double> strengths);

    // Parses a comma-separated list such as "0.9,0.9,0.9"; M is the length.
    static CookieEnvironment parse(const std::string& csv);

    int cookie_count() const { return static_cast<int>(p_.size()); }
    const std::vector<double>& strengths() const { return p_; }

    // True when every p_j lies strictly inside (0,1), the standing
    // assumption of most of the theory; boundary environments remain usable.
    bool strictly_interior() const;

private:
    std::vector<double> p_;
};

enum class Transience { TransientRight, TransientLeft, Recurrent };
enum class SpeedSign { Positive, Negative, Zero };

struct Classification {
    Transience transience;
    SpeedSign speed_sign;
};

double delta(const CookieEnvironment& env);

// Thresholds: transient iff |delta| > 1, nonzero speed iff |delta| > 2.
// Boundary values classify with the closed interval (Recurrent / Zero).
Classification classify(const CookieEnvironment& env);

// Reflection p_j -> 1 - p_j; negates delta and mirrors the walk through 0.
CookieEnvironment mirror(const CookieEnvironment& env);

const char* to_string(Transience t);
const char* to_string(SpeedSign s);

}  // namespace erw

#include "erw/environment.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

namespace erw {

CookieEnvironment::CookieEnvironment(std::vector<double> strengths)
    : p_(std::move(strengths)) {
    if (p_.empty()) {
        throw std::invalid_argument("cookie environment needs at least one strength");
    }
    for (std::size_t j = 0; j < p_.size(); ++j) {
        if (!(p_[j] >= 0.0 && p_[j] <= 1.0)) {
            throw std::invalid_argument("cookie strength p" + std::to_string(j + 1) +
                                        " must lie in [0,1]");
        }
    }
}

CookieEnvironment CookieEnvironment::parse(const std::string& csv) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        const std::string token = csv.substr(pos, comma - pos);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse cookie strength '" + token + "'");
        }
        if (used != token.size()) {
            throw std::invalid_argument("cannot parse cookie strength '" + token + "'");
        }
        values.push_back(v);
        pos = comma + 1;
    }
    return CookieEnvironment(std::move(values));
}

bool CookieEnvironment::strictly_interior() const {
    for (double v : p_) {
        if (v <= 0.0 || v >= 1.0) return false;
    }
    return true;
}

double delta(const CookieEnvironment& env) {
    double d = 0.0;
    for (double v : env.strengths()) d += 2.0 * v - 1.0;
    return d;
}

Classification classify(const CookieEnvironment& env) {
    const double d = delta(env);
    Classification c{};
    c.transience = d > 1.0    ? Transience::TransientRight
                   : d < -1.0 ? Transience::TransientLeft
                              : Transience::Recurrent;
    c.speed_sign = d > 2.0    ? SpeedSign::Positive
                   : d < -2.0 ? SpeedSign::Negative
                              : SpeedSign::Zero;
    return c;
}

CookieEnvironment mirror(const CookieEnvironment& env) {
    std::vector<double> q;
    q.reserve(env.strengths().size());
    for (double v : env.strengths()) q.push_back(1.0 - v);
    return CookieEnvironment(std::move(q));
}

const char* to_string(Transience t) {
    switch (t) {
        case Transience::TransientRight: return "TransientRight";
        case Transience::TransientLeft: return "TransientLeft";
        case Transience::Recurrent: return "Recurrent";
    }
    return "?";
}

const char* to_string(SpeedSign s) {
    switch (s) {
        case SpeedSign::Positive: return "Positive";
        case SpeedSign::Negative: return "Negative";
        case SpeedSign::Zero: return "Zero";
    }
    return "?";
}

}  // namespace erw

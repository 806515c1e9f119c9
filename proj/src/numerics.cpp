#include "hardy/numerics.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "hardy/errors.hpp"

namespace hardy {

complex unit_point(double t) {
    const double quarter = t / (0.5 * pi);
    const double k = std::nearbyint(quarter);
    if (k != 0.0 && std::abs(quarter - k) <= 4.0 * unit_roundoff * std::abs(k)) {
        switch (((static_cast<long long>(k) % 4) + 4) % 4) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    return {std::cos(t), std::sin(t)};
}

double reduce_angle(double t) {
    double r = std::remainder(t, 2.0 * pi);
    if (r <= -pi) {
        r += 2.0 * pi;
    }
    return r;
}

complex expm1(complex z) {
    const double a = z.real();
    const double b = z.imag();
    const double s = std::sin(0.5 * b);
    return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

complex log1p(complex z) {
    const double x = z.real();
    const double y = z.imag();
    return {0.5 * std::log1p(2.0 * x + x * x + y * y), std::atan2(y, 1.0 + x)};
}

complex ipow(complex z, int n) {
    if (n < 0) {
        return 1.0 / ipow(z, -n);
    }
    complex result{1.0, 0.0};
    complex base = z;
    while (n > 0) {
        if (n & 1) {
            result *= base;
        }
        base *= base;
        n >>= 1;
    }
    return result;
}

complex one_minus_power(complex x, int p) {
    if (std::abs(x) < 0.5) {
        return -expm1(static_cast<double>(p) * log1p(-x));
    }
    return 1.0 - ipow(1.0 - x, p);
}

namespace {

template <int N>
gauss_rule make_rule() {
    using boost::math::quadrature::gauss;
    gauss_rule rule;
    const auto& x = gauss<double, N>::abscissa();
    const auto& w = gauss<double, N>::weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) {
            rule.nodes.push_back(0.0);
            rule.weights.push_back(w[i]);
            continue;
        }
        rule.nodes.push_back(-x[i]);
        rule.weights.push_back(w[i]);
        rule.nodes.push_back(x[i]);
        rule.weights.push_back(w[i]);
    }
    return rule;
}

}  // namespace

const gauss_rule& gauss_legendre(int n) {
    static const gauss_rule r8 = make_rule<8>();
    static const gauss_rule r20 = make_rule<20>();
    static const gauss_rule r40 = make_rule<40>();
    switch (n) {
        case 8: return r8;
        case 20: return r20;
        case 40: return r40;
        default: throw argument_error("unsupported Gauss-Legendre order " + std::to_string(n));
    }
}

}  // namespace hardy

namespace hardy {

double parse_real(const std::string& text) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw argument_error("not a number: '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(value)) {
        throw argument_error("not a number: '" + text + "'");
    }
    return value;
}

int parse_int(const std::string& text) {
    std::size_t used = 0;
    long value = 0;
    try {
        value = std::stol(text, &used);
    } catch (const std::exception&) {
        throw argument_error("not an integer: '" + text + "'");
    }
    if (used != text.size() || value < INT32_MIN || value > INT32_MAX) {
        throw argument_error("not an integer: '" + text + "'");
    }
    return static_cast<int>(value);
}

complex parse_complex(const std::string& raw) {
    std::string text;
    for (char ch : raw) {
        if (ch != ' ') {
            text += ch;
        }
    }
    if (text.empty()) {
        throw argument_error("empty complex number");
    }
    if (text.back() != 'i' && text.back() != 'j') {
        return {parse_real(text), 0.0};
    }
    const std::string body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imaginary = [](const std::string& s) {
        if (s.empty() || s == "+") {
            return 1.0;
        }
        if (s == "-") {
            return -1.0;
        }
        return parse_real(s);
    };
    if (split == std::string::npos) {
        return {0.0, imaginary(body)};
    }
    return {parse_real(body.substr(0, split)), imaginary(body.substr(split))};
}

}  // namespace hardy

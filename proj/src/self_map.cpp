#include "dphi/self_map.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <random>
#include <utility>

#include "dphi/errors.hpp"

namespace dphi {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (res.ec != std::errc{}) throw numeric_failure("cannot format double");
    return std::string(buf, res.ptr);
}

double parse_double_strict(const std::string& sv, const std::string& whole) {
    const char* first = sv.data();
    const char* last = sv.data() + sv.size();
    // from_chars rejects a leading plus, but "a+bi" splits into "a" / "+bi".
    if (first != last && *first == '+') ++first;
    double v{};
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || p != last)
        throw invalid_spec("bad numeric literal in \"" + whole + "\"");
    return v;
}

double parse_real(const std::string& s) {
    cplx v = parse_complex(s);
    if (v.imag() != 0.0)
        throw invalid_spec("expected a real parameter, got \"" + s + "\"");
    return v.real();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

void check_order(int order) {
    if (order < 0 || order > kMaxSeriesOrder)
        throw invalid_spec("series order out of range: " + std::to_string(order));
}

} // namespace

cplx parse_complex(const std::string& s0) {
    std::string s;
    for (char c : s0)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw invalid_spec("empty complex literal");
    if (s.back() == 'i' || s.back() == 'I') {
        std::string body = s.substr(0, s.size() - 1);
        // Split point: a sign that is neither leading nor part of an exponent.
        std::size_t split = std::string::npos;
        for (std::size_t i = body.size(); i-- > 1;) {
            char c = body[i];
            if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        if (split == std::string::npos) {
            if (body.empty() || body == "+") return cplx(0.0, 1.0);
            if (body == "-") return cplx(0.0, -1.0);
            return cplx(0.0, parse_double_strict(body, s0));
        }
        std::string re = body.substr(0, split);
        std::string im = body.substr(split);
        double imag;
        if (im == "+")
            imag = 1.0;
        else if (im == "-")
            imag = -1.0;
        else
            imag = parse_double_strict(im, s0);
        return cplx(parse_double_strict(re, s0), imag);
    }
    return cplx(parse_double_strict(s, s0), 0.0);
}

std::string format_complex(cplx v) {
    if (v.imag() == 0.0) return fmt_double(v.real());
    std::string im = fmt_double(v.imag()) + "i";
    if (v.real() == 0.0) return im;
    if (v.imag() > 0.0) return fmt_double(v.real()) + "+" + im;
    return fmt_double(v.real()) + im;
}

SelfMap SelfMap::dilation(cplx r) {
    double m = std::abs(r);
    if (!std::isfinite(m) || m <= 0.0 || m >= 1.0)
        throw invalid_spec("dilation factor must satisfy 0 < |r| < 1, got |r| = " +
                           std::to_string(m));
    SelfMap sm(Kind::dilation);
    sm.a_ = r;
    return sm;
}

SelfMap SelfMap::automorphism(cplx eta, cplx beta) {
    if (std::abs(std::abs(eta) - 1.0) > 1e-12)
        throw invalid_spec("automorphism prefactor must be unimodular, got |eta| = " +
                           std::to_string(std::abs(eta)));
    if (!(std::abs(beta) < 1.0))
        throw invalid_spec("automorphism parameter must satisfy |beta| < 1, got |beta| = " +
                           std::to_string(std::abs(beta)));
    SelfMap sm(Kind::automorphism);
    sm.a_ = eta;
    sm.b_ = beta;
    return sm;
}

SelfMap SelfMap::lens(double delta) {
    if (!(delta > 0.0) || !(delta < 1.0))
        throw invalid_spec("lens aperture must lie in the open interval (0, 1), got " +
                           std::to_string(delta));
    SelfMap sm(Kind::lens);
    sm.delta_ = delta;
    return sm;
}

SelfMap SelfMap::singular_exp() { return SelfMap(Kind::singular_exp); }

SelfMap SelfMap::polynomial(std::vector<cplx> coeffs) {
    if (coeffs.empty()) throw invalid_spec("polynomial map needs at least one coefficient");
    for (cplx c : coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw invalid_spec("polynomial coefficients must be finite");
    while (coeffs.size() > 1 && coeffs.back() == cplx(0.0, 0.0)) coeffs.pop_back();

    SelfMap sm(Kind::polynomial);
    sm.coeffs_ = std::move(coeffs);

    // Deterministic disk sample; rejects maps that exit the closed disk. This
    // is a screen, not a proof, but catches every practical mis-specification.
    std::mt19937 gen(20240517u);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        double rad = 0.999 * std::sqrt(unit(gen));
        double ang = 2.0 * M_PI * unit(gen);
        cplx z = std::polar(rad, ang);
        cplx w = sm.eval(z);
        if (!(std::abs(w) < 1.0))
            throw invalid_spec("polynomial does not map the unit disk into itself: |phi(" +
                               format_complex(z) + ")| = " + std::to_string(std::abs(w)));
    }
    return sm;
}

SelfMap SelfMap::parse(const std::string& spec) {
    std::size_t colon = spec.find(':');
    std::string head = colon == std::string::npos ? spec : spec.substr(0, colon);
    std::string rest = colon == std::string::npos ? std::string() : spec.substr(colon + 1);

    if (head == "exp") {
        if (colon != std::string::npos)
            throw invalid_spec("map spec \"exp\" takes no parameter, got \"" + spec + "\"");
        return singular_exp();
    }
    if (colon == std::string::npos || rest.empty())
        throw invalid_spec("map spec \"" + spec + "\" is missing its parameter");
    if (head == "dilation") return dilation(parse_complex(rest));
    if (head == "auto") return automorphism(cplx(1.0, 0.0), parse_complex(rest));
    if (head == "lens") return lens(parse_real(rest));
    if (head == "poly") {
        std::vector<cplx> coeffs;
        for (const std::string& part : split(rest, ','))
            coeffs.push_back(parse_complex(part));
        return polynomial(std::move(coeffs));
    }
    throw invalid_spec("unknown map spec \"" + spec + "\"");
}

std::string SelfMap::spec_string() const {
    switch (kind_) {
        case Kind::dilation:
            return "dilation:" + format_complex(a_);
        case Kind::automorphism:
            if (std::abs(a_ - cplx(1.0, 0.0)) > 1e-15)
                throw invalid_spec(
                    "only automorphisms with unit prefactor have a spec string");
            return "auto:" + format_complex(b_);
        case Kind::lens:
            return "lens:" + fmt_double(delta_);
        case Kind::singular_exp:
            return "exp";
        case Kind::polynomial: {
            std::string out = "poly:";
            for (std::size_t i = 0; i < coeffs_.size(); ++i) {
                if (i) out.push_back(',');
                out += format_complex(coeffs_[i]);
            }
            return out;
        }
    }
    throw invalid_spec("corrupt map kind");
}

cplx SelfMap::eval(cplx z) const {
    switch (kind_) {
        case Kind::dilation:
            return a_ * z;
        case Kind::automorphism:
            return a_ * (b_ - z) / (cplx(1.0, 0.0) - std::conj(b_) * z);
        case Kind::lens: {
            cplx sigma = (cplx(1.0, 0.0) + z) / (cplx(1.0, 0.0) - z);
            cplx u = std::pow(sigma, delta_);
            return (u - cplx(1.0, 0.0)) / (u + cplx(1.0, 0.0));
        }
        case Kind::singular_exp:
            return std::exp((z + cplx(1.0, 0.0)) / (z - cplx(1.0, 0.0)));
        case Kind::polynomial: {
            cplx acc = 0.0;
            for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
            return acc;
        }
    }
    throw invalid_spec("corrupt map kind");
}

cplx SelfMap::derivative(cplx z) const {
    switch (kind_) {
        case Kind::dilation:
            return a_;
        case Kind::automorphism: {
            cplx den = cplx(1.0, 0.0) - std::conj(b_) * z;
            return a_ * (std::norm(b_) - 1.0) / (den * den);
        }
        case Kind::lens: {
            cplx sigma = (cplx(1.0, 0.0) + z) / (cplx(1.0, 0.0) - z);
            cplx u = std::pow(sigma, delta_);
            cplx up1 = u + cplx(1.0, 0.0);
            cplx om = cplx(1.0, 0.0) - z;
            return 4.0 * delta_ * std::pow(sigma, delta_ - 1.0) / (up1 * up1 * om * om);
        }
        case Kind::singular_exp: {
            cplx om = z - cplx(1.0, 0.0);
            return eval(z) * cplx(-2.0, 0.0) / (om * om);
        }
        case Kind::polynomial: {
            cplx acc = 0.0;
            for (std::size_t i = coeffs_.size(); i-- > 1;)
                acc = acc * z + static_cast<double>(i) * coeffs_[i];
            return acc;
        }
    }
    throw invalid_spec("corrupt map kind");
}

PowerSeries SelfMap::as_series(int order) const {
    check_order(order);
    std::vector<cplx> c(static_cast<std::size_t>(order) + 1, cplx(0.0, 0.0));
    switch (kind_) {
        case Kind::dilation:
            if (order >= 1) c[1] = a_;
            return PowerSeries(std::move(c));
        case Kind::automorphism: {
            c[0] = a_ * b_;
            cplx factor = a_ * (std::norm(b_) - 1.0);
            cplx pw = 1.0;
            for (int n = 1; n <= order; ++n) {
                c[n] = factor * pw;
                pw *= std::conj(b_);
            }
            return PowerSeries(std::move(c));
        }
        case Kind::lens: {
            // sigma^delta = exp(2 delta atanh z); push exp through the log
            // series with the usual convolution recurrence, then form
            // (s - 1)/(s + 1) by series division.
            std::vector<double> L(static_cast<std::size_t>(order) + 1, 0.0);
            for (int k = 1; k <= order; k += 2) L[k] = 2.0 * delta_ / k;
            std::vector<double> s(static_cast<std::size_t>(order) + 1, 0.0);
            s[0] = 1.0;
            for (int n = 1; n <= order; ++n) {
                double acc = 0.0;
                for (int k = 1; k <= n; k += 2) acc += k * L[k] * s[n - k];
                s[n] = acc / n;
            }
            // t = (s - 1)/(s + 1): t[0] = 0 and the denominator constant is 2.
            std::vector<double> t(static_cast<std::size_t>(order) + 1, 0.0);
            for (int n = 1; n <= order; ++n) {
                double acc = s[n];
                for (int k = 1; k < n; ++k) acc -= t[k] * s[n - k];
                t[n] = acc / 2.0;
            }
            for (int n = 0; n <= order; ++n) c[n] = t[n];
            return PowerSeries(std::move(c));
        }
        case Kind::singular_exp:
            throw invalid_spec(
                "the singular exponential map has no usable Taylor truncation; "
                "use pointwise evaluation instead");
        case Kind::polynomial: {
            std::size_t upto = std::min(c.size(), coeffs_.size());
            for (std::size_t i = 0; i < upto; ++i) c[i] = coeffs_[i];
            return PowerSeries(std::move(c));
        }
    }
    throw invalid_spec("corrupt map kind");
}

bool SelfMap::univalent() const {
    switch (kind_) {
        case Kind::dilation:
        case Kind::automorphism:
        case Kind::lens:
            return true;
        case Kind::singular_exp:
            return false;
        case Kind::polynomial:
            return coeffs_.size() == 2 && coeffs_[1] != cplx(0.0, 0.0);
    }
    return false;
}

bool SelfMap::fixes_origin() const {
    switch (kind_) {
        case Kind::dilation:
        case Kind::lens:
            return true;
        case Kind::automorphism:
            return b_ == cplx(0.0, 0.0);
        case Kind::singular_exp:
            return false;
        case Kind::polynomial:
            return coeffs_[0] == cplx(0.0, 0.0);
    }
    return false;
}

double SelfMap::sup_norm_bound() const {
    switch (kind_) {
        case Kind::dilation:
            return std::abs(a_);
        case Kind::polynomial: {
            double s = 0.0;
            for (cplx c : coeffs_) s += std::abs(c);
            return std::min(1.0, s);
        }
        default:
            return 1.0;
    }
}

} // namespace dphi

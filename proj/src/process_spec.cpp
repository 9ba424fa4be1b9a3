#include "levyup/process_spec.hpp"

#include <sstream>
#include <stdexcept>

namespace levyup {

ProcessSpec::ProcessSpec(Kind k, double a, double b, double c)
    : kind_(k), p0_(a), p1_(b), p2_(c) {}

ProcessSpec ProcessSpec::brownian_drift(double q, double gamma) {
    if (!(q > 0))
        throw std::invalid_argument("brownian_drift: q must be > 0");
    return ProcessSpec(Kind::brownian_drift, q, gamma, 0.0);
}

ProcessSpec ProcessSpec::stable_sn(double c, double alpha, double drift) {
    if (!(c > 0))
        throw std::invalid_argument("stable_sn: c must be > 0");
    if (!(alpha > 1.0 && alpha <= 2.0))
        throw std::invalid_argument("stable_sn: alpha must be in (1, 2]");
    return ProcessSpec(Kind::stable_sn, c, alpha, drift);
}

ProcessSpec ProcessSpec::bv_drift_cpp(double gamma_star, double jump_rate, double jump_mean) {
    if (!(gamma_star > 0))
        throw std::invalid_argument("bv_drift_cpp: gamma_star must be > 0");
    if (!(jump_rate >= 0))
        throw std::invalid_argument("bv_drift_cpp: jump_rate must be >= 0");
    if (!(jump_mean > 0))
        throw std::invalid_argument("bv_drift_cpp: jump_mean must be > 0");
    return ProcessSpec(Kind::bv_drift_cpp, gamma_star, jump_rate, jump_mean);
}

ProcessSpec ProcessSpec::poisson_multiple(double alpha_jump, double rate) {
    if (!(alpha_jump > 0))
        throw std::invalid_argument("poisson_multiple: alpha_jump must be > 0");
    if (!(rate > 0))
        throw std::invalid_argument("poisson_multiple: rate must be > 0");
    return ProcessSpec(Kind::poisson_multiple, alpha_jump, rate, 0.0);
}

ProcessSpec ProcessSpec::dual_of(const ProcessSpec& inner) {
    if (inner.side() != Side::spectrally_negative)
        throw std::invalid_argument("dual_of: inner spec must be spectrally negative");
    ProcessSpec s(Kind::dual_of, 0.0, 0.0, 0.0);
    s.inner_ = std::make_shared<const ProcessSpec>(inner);
    return s;
}

Side ProcessSpec::side() const {
    switch (kind_) {
    case Kind::brownian_drift:
    case Kind::stable_sn:
    case Kind::bv_drift_cpp:
        return Side::spectrally_negative;
    default:
        return Side::spectrally_positive;
    }
}

const ProcessSpec& ProcessSpec::inner() const {
    if (kind_ != Kind::dual_of || !inner_)
        throw std::logic_error("inner(): spec is not a dual");
    return *inner_;
}

bool ProcessSpec::unbounded_variation() const {
    switch (kind_) {
    case Kind::brownian_drift:
    case Kind::stable_sn:
        return true;
    case Kind::dual_of:
        return inner().unbounded_variation();
    default:
        return false;
    }
}

std::string ProcessSpec::describe() const {
    std::ostringstream os;
    switch (kind_) {
    case Kind::brownian_drift:
        os << "brownian_drift(q=" << q() << ", gamma=" << gamma() << ")";
        break;
    case Kind::stable_sn:
        os << "stable_sn(c=" << c() << ", alpha=" << alpha() << ", drift=" << drift() << ")";
        break;
    case Kind::bv_drift_cpp:
        os << "bv_drift_cpp(gamma_star=" << gamma_star() << ", jump_rate=" << jump_rate()
           << ", jump_mean=" << jump_mean() << ")";
        break;
    case Kind::poisson_multiple:
        os << "poisson_multiple(alpha_jump=" << alpha_jump() << ", rate=" << rate() << ")";
        break;
    case Kind::dual_of:
        os << "dual_of(" << inner().describe() << ")";
        break;
    }
    return os.str();
}

} // namespace levyup

#include "giniflow/wfunctional.hpp"

#include "giniflow/errors.hpp"

#include <cmath>
#include <numbers>

#include "json.hpp"

namespace giniflow {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw DomainError(std::string(name) + " must be finite");
    }
}

}  // namespace

double w_core(double tau, double ricci_scalar, double grad_f_sq, double f_potential, double n_dim) {
    require_finite(tau, "tau");
    require_finite(ricci_scalar, "ricci_scalar");
    require_finite(grad_f_sq, "grad_f_sq");
    require_finite(f_potential, "f_potential");
    require_finite(n_dim, "n_dim");
    if (!(tau > 0.0)) throw DomainError("tau must be positive");
    if (grad_f_sq < 0.0) throw DomainError("grad_f_sq must be nonnegative");
    return tau * (ricci_scalar + grad_f_sq) + f_potential - n_dim;
}

double w_normalization(double tau, double n_dim) {
    require_finite(tau, "tau");
    require_finite(n_dim, "n_dim");
    if (!(tau > 0.0)) throw DomainError("tau must be positive");
    return std::pow(4.0 * std::numbers::pi * tau, -n_dim / 2.0);
}

double w_weight(double f_potential) {
    require_finite(f_potential, "f_potential");
    return std::exp(-f_potential);
}

WResult evaluate_w(const WParams& p) {
    require_finite(p.ricci_scalar, "ricci_scalar");
    if (!(p.tau > 0.0) || !std::isfinite(p.tau)) throw DomainError("tau must be positive and finite");
    if (p.n_dim < 1) throw DomainError("n_dim must be at least 1");
    if (!(p.grad_f_sq >= 0.0) || !std::isfinite(p.grad_f_sq)) {
        throw DomainError("grad_f_sq must be nonnegative and finite");
    }
    if (!(p.volume > 0.0) || !std::isfinite(p.volume)) {
        throw DomainError("volume must be positive and finite");
    }

    WResult r;
    r.core = w_core(p.tau, p.ricci_scalar, p.grad_f_sq, p.f_potential, static_cast<double>(p.n_dim));
    if (p.norm_override) {
        if (!(*p.norm_override > 0.0) || !std::isfinite(*p.norm_override)) {
            throw DomainError("normalization override must be positive and finite");
        }
        r.normalization = *p.norm_override;
        r.norm_mode = FactorMode::override_value;
    } else {
        r.normalization = w_normalization(p.tau, static_cast<double>(p.n_dim));
    }
    if (p.weight_override) {
        if (!(*p.weight_override > 0.0) || !std::isfinite(*p.weight_override)) {
            throw DomainError("weight override must be positive and finite");
        }
        r.weight = *p.weight_override;
        r.weight_mode = FactorMode::override_value;
    } else {
        r.weight = w_weight(p.f_potential);
    }
    r.volume = p.volume;
    r.w_value = r.core * r.normalization * r.weight * r.volume;
    return r;
}

double rd_potential(double base, double rate, double t) {
    require_finite(base, "base");
    require_finite(rate, "rate");
    require_finite(t, "t");
    return base * std::exp(rate * t);
}

std::string w_result_json(const WResult& r) {
    nlohmann::ordered_json obj;
    obj["core"] = r.core;
    obj["normalization"] = r.normalization;
    obj["normalization_mode"] = r.norm_mode == FactorMode::formula ? "formula" : "override";
    obj["weight"] = r.weight;
    obj["weight_mode"] = r.weight_mode == FactorMode::formula ? "formula" : "override";
    obj["volume"] = r.volume;
    obj["w_value"] = r.w_value;
    return obj.dump(2) + "\n";
}

}  // namespace giniflow

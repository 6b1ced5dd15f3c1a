#include "esos/baseline.hpp"

#include <cmath>

namespace esos {

double TransformSpec::operator()(double t) const {
    switch (kind) {
        case Transform::Identity: return t;
        case Transform::Power: return std::pow(t, power_a);
        case Transform::Log: return std::log(t);
    }
    throw std::logic_error("unknown transform");
}

double TransformSpec::deriv(double t) const {
    switch (kind) {
        case Transform::Identity: return 1.0;
        case Transform::Power: return power_a * std::pow(t, power_a - 1.0);
        case Transform::Log: return 1.0 / t;
    }
    throw std::logic_error("unknown transform");
}

double TransformSpec::inverse(double y) const {
    switch (kind) {
        case Transform::Identity: return y;
        case Transform::Power: return std::pow(y, 1.0 / power_a);
        case Transform::Log: return std::exp(y);
    }
    throw std::logic_error("unknown transform");
}

double TransformSpec::lower_limit() const {
    return kind == Transform::Log ? 1.0 : 0.0;
}

std::string TransformSpec::name() const {
    switch (kind) {
        case Transform::Identity: return "identity";
        case Transform::Power: return "power";
        case Transform::Log: return "log";
    }
    return "?";
}

BaselineSpec BaselineSpec::exponential(int n, double rate) {
    if (n < 1) throw std::invalid_argument("system size must be positive");
    if (rate <= 0) throw std::invalid_argument("exponential rate must be positive");
    std::vector<ComponentBaseline> comps(n);
    for (auto& c : comps) {
        c.family = Family::Exponential;
        c.rate = rate;
    }
    return BaselineSpec(std::move(comps));
}

BaselineSpec BaselineSpec::exponential(const std::vector<double>& rates) {
    std::vector<ComponentBaseline> comps(rates.size());
    for (std::size_t j = 0; j < rates.size(); ++j) {
        if (rates[j] <= 0) throw std::invalid_argument("exponential rate must be positive");
        comps[j].family = Family::Exponential;
        comps[j].rate = rates[j];
    }
    return BaselineSpec(std::move(comps));
}

BaselineSpec BaselineSpec::scale(int n, TransformSpec g, double rate) {
    if (n < 1) throw std::invalid_argument("system size must be positive");
    if (rate <= 0) throw std::invalid_argument("rate must be positive");
    std::vector<ComponentBaseline> comps(n);
    for (auto& c : comps) {
        c.family = Family::Scale;
        c.g = g;
        c.rate = rate;
    }
    return BaselineSpec(std::move(comps));
}

BaselineSpec BaselineSpec::location_scale(int n, TransformSpec g, double mu) {
    if (n < 1) throw std::invalid_argument("system size must be positive");
    std::vector<ComponentBaseline> comps(n);
    for (auto& c : comps) {
        c.family = Family::LocationScale;
        c.g = g;
        c.rate = 1.0;  // lambda unknown; estimates target lambda*alpha
        c.loc = mu;
    }
    return BaselineSpec(std::move(comps));
}

double BaselineSpec::start_time(int j) const {
    const auto& c = component(j);
    if (c.family == Family::LocationScale) return c.g.inverse(c.loc);
    return c.g.lower_limit();
}

double BaselineSpec::log_survival(int j, double t) const {
    const auto& c = component(j);
    switch (c.family) {
        case Family::Exponential:
            if (t < 0) throw std::domain_error("time below support of exponential baseline");
            return -c.rate * t;
        case Family::Scale:
            if (t < c.g.lower_limit())
                throw std::domain_error("time below support of scale-family baseline");
            return -c.rate * c.g(t);
        case Family::LocationScale: {
            if (t < start_time(j))
                throw std::domain_error("time below support of location-scale baseline");
            return -c.rate * (c.g(t) - c.loc);
        }
    }
    throw std::logic_error("unknown family");
}

double BaselineSpec::hazard(int j, double t) const {
    const auto& c = component(j);
    switch (c.family) {
        case Family::Exponential:
            if (t < 0) throw std::domain_error("time below support");
            return c.rate;
        case Family::Scale:
            if (t < c.g.lower_limit()) throw std::domain_error("time below support");
            return c.rate * c.g.deriv(t);
        case Family::LocationScale:
            if (t < start_time(j)) throw std::domain_error("time below support");
            return c.rate * c.g.deriv(t);
    }
    throw std::logic_error("unknown family");
}

double BaselineSpec::delta(int j, double t_prev, double t_curr) const {
    const auto& c = component(j);
    if (t_prev == 0.0) {
        // x_0 convention: ln F̄*(x_0) = 0. Evaluated directly so that, e.g.,
        // the trial attaining mu in a location-scale fit contributes exactly 0.
        return -log_survival(j, t_curr);
    }
    if (c.family != Family::Exponential && t_prev < start_time(j))
        t_prev = start_time(j);
    if (t_prev > t_curr) throw std::invalid_argument("delta requires t_prev <= t_curr");
    return log_survival(j, t_prev) - log_survival(j, t_curr);
}

double BaselineSpec::invert_log_survival(int j, double ls) const {
    if (ls > 0) throw std::invalid_argument("log-survival must be nonpositive");
    const auto& c = component(j);
    switch (c.family) {
        case Family::Exponential: return -ls / c.rate;
        case Family::Scale: return c.g.inverse(-ls / c.rate);
        case Family::LocationScale: return c.g.inverse(c.loc - ls / c.rate);
    }
    throw std::logic_error("unknown family");
}

}  // namespace esos

#include "casimir/materials.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace casimir {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

bool close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Integral of 1/v over a segment where v varies linearly from v0 to v1.
double inv_integral_linear(double dz, double v0, double v1) {
    if (std::abs(v1 - v0) <= 1e-14 * std::max(std::abs(v0), std::abs(v1)))
        return dz * 2.0 / (v0 + v1);
    return dz * std::log(v1 / v0) / (v1 - v0);
}

}  // namespace

MaterialSpec MaterialSpec::isotropic(double eps, double mu) {
    MaterialSpec m{eps, eps, eps, mu, mu, mu};
    m.validate();
    return m;
}

bool MaterialSpec::is_vacuum(double tol) const {
    return close(eps_x, 1, tol) && close(eps_y, 1, tol) && close(eps_z, 1, tol) &&
           close(mu_x, 1, tol) && close(mu_y, 1, tol) && close(mu_z, 1, tol);
}

bool MaterialSpec::is_isotropic(double tol) const {
    return close(eps_x, eps_y, tol) && close(eps_y, eps_z, tol) &&
           close(mu_x, mu_y, tol) && close(mu_y, mu_z, tol);
}

bool MaterialSpec::is_cslice(double tol) const {
    return close(eps_x, mu_x, tol) && close(eps_y, mu_y, tol) &&
           close(eps_z, mu_z, tol) && close(eps_x, eps_y, tol) &&
           close(eps_x * eps_z, 1.0, tol);
}

void MaterialSpec::validate() const {
    for (double c : {eps_x, eps_y, eps_z, mu_x, mu_y, mu_z})
        require(std::isfinite(c) && c > 0.0,
                "material components must be finite and strictly positive");
}

MaterialSpec cslice_material(double m) {
    require(std::isfinite(m) && m > 0.0, "cslice_material: m must be > 0");
    return MaterialSpec{1.0 / m, 1.0 / m, m, 1.0 / m, 1.0 / m, m};
}

CompressionProfile CompressionProfile::constant(double a, double b, double value) {
    CompressionProfile p{a, b, Constant{value}};
    p.validate();
    return p;
}

CompressionProfile CompressionProfile::linear(double a, double b, double va, double vb) {
    CompressionProfile p{a, b, Linear{va, vb}};
    p.validate();
    return p;
}

CompressionProfile CompressionProfile::table(std::vector<double> z, std::vector<double> v) {
    require(z.size() >= 2 && z.size() == v.size(),
            "table profile needs at least two (z, v) samples");
    CompressionProfile p{z.front(), z.back(), Table{std::move(z), std::move(v)}};
    p.validate();
    return p;
}

void CompressionProfile::validate() const {
    require(std::isfinite(a) && std::isfinite(b) && a < b,
            "profile interval must satisfy a < b");
    if (const auto* c = std::get_if<Constant>(&form)) {
        require(std::isfinite(c->value) && c->value > 0.0, "profile value must be > 0");
    } else if (const auto* l = std::get_if<Linear>(&form)) {
        require(std::isfinite(l->start) && l->start > 0.0 &&
                std::isfinite(l->end) && l->end > 0.0,
                "linear profile endpoints must be > 0");
    } else {
        const auto& t = std::get<Table>(form);
        require(t.z.size() >= 2 && t.z.size() == t.v.size(), "malformed table profile");
        require(t.z.front() == a && t.z.back() == b,
                "table z values must span the profile interval");
        for (std::size_t i = 0; i < t.z.size(); ++i) {
            require(std::isfinite(t.v[i]) && t.v[i] > 0.0, "table values must be > 0");
            if (i) require(t.z[i] > t.z[i - 1], "table z values must be strictly increasing");
        }
    }
}

double CompressionProfile::operator()(double z) const {
    require(z >= a - 1e-12 && z <= b + 1e-12, "profile evaluated outside its interval");
    if (const auto* c = std::get_if<Constant>(&form)) return c->value;
    if (const auto* l = std::get_if<Linear>(&form))
        return l->start + (l->end - l->start) * (z - a) / (b - a);
    const auto& t = std::get<Table>(form);
    auto it = std::upper_bound(t.z.begin(), t.z.end(), z);
    std::size_t hi = std::min<std::size_t>(
        std::max<std::ptrdiff_t>(1, it - t.z.begin()), t.z.size() - 1);
    std::size_t lo = hi - 1;
    double f = (z - t.z[lo]) / (t.z[hi] - t.z[lo]);
    return t.v[lo] + f * (t.v[hi] - t.v[lo]);
}

namespace {

/// Integral of 1/profile over [z0, z1] inside the profile interval, exact
/// for each closed form and for the table's linear interpolant.
double inv_integral(const CompressionProfile& p, double z0, double z1) {
    if (const auto* c = std::get_if<CompressionProfile::Constant>(&p.form))
        return (z1 - z0) / c->value;
    if (std::get_if<CompressionProfile::Linear>(&p.form))
        return inv_integral_linear(z1 - z0, p(z0), p(z1));
    const auto& t = std::get<CompressionProfile::Table>(p.form);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < t.z.size(); ++i) {
        double s0 = std::max(z0, t.z[i]);
        double s1 = std::min(z1, t.z[i + 1]);
        if (s1 <= s0) continue;
        sum += inv_integral_linear(s1 - s0, p(s0), p(s1));
    }
    return sum;
}

}  // namespace

double virtual_width(const CompressionProfile& profile) {
    profile.validate();
    return inv_integral(profile, profile.a, profile.b);
}

double compression_factor(const CompressionProfile& profile) {
    return profile.width() / virtual_width(profile);
}

double effective_length(double d, const CompressionProfile& profile) {
    require(d > 0.0, "cavity width must be > 0");
    require(profile.a >= -1e-12 * d && profile.b <= d * (1.0 + 1e-12),
            "profile interval must lie inside the cavity [0, d]");
    return d - profile.width() + virtual_width(profile);
}

double effective_length(double d, const std::optional<CompressionProfile>& profile) {
    if (!profile) {
        require(d > 0.0, "cavity width must be > 0");
        return d;
    }
    return effective_length(d, *profile);
}

BoundarySpec BoundarySpec::half_space(const MaterialSpec& m) {
    m.validate();
    return {Kind::HalfSpace, m};
}

Stack::Stack(BoundarySpec l, BoundarySpec r, std::vector<Layer> ls)
    : left(l), right(r), layers(std::move(ls)) {
    require(!layers.empty(), "stack needs at least one layer");
    double sum = 0.0;
    for (const auto& layer : layers) {
        require(layer.thickness > 0.0, "layer thicknesses must be > 0");
        layer.material.validate();
        sum += layer.thickness;
    }
    width = sum;
}

namespace {

/// Slice value on [z0, z1]: midpoint sample or the optical-path-preserving
/// harmonic mean.
double slice_value(const CompressionProfile& p, double z0, double z1, SliceRule rule) {
    if (rule == SliceRule::Midpoint) return p(0.5 * (z0 + z1));
    return (z1 - z0) / inv_integral(p, z0, z1);
}

template <typename MakeMaterial>
Stack discretize_impl(const std::optional<CompressionProfile>& profile,
                      BoundarySpec left, BoundarySpec right,
                      double d, int N, SliceRule rule, MakeMaterial make) {
    require(d > 0.0, "cavity width must be > 0");
    require(N >= 1, "slice count must be >= 1");

    std::vector<Layer> layers;
    if (!profile) {
        for (int j = 0; j < N; ++j)
            layers.push_back({d / N, MaterialSpec::vacuum()});
        return Stack(left, right, std::move(layers));
    }

    profile->validate();
    require(profile->a >= -1e-12 * d && profile->b <= d * (1.0 + 1e-12),
            "profile interval must lie inside the cavity [0, d]");
    const double a = std::max(0.0, profile->a);
    const double b = std::min(d, profile->b);

    const bool has_left = a > 1e-15 * d;
    const bool has_right = b < d * (1.0 - 1e-15);
    const int min_needed = 1 + (has_left ? 1 : 0) + (has_right ? 1 : 0);
    require(N >= min_needed, "slice count too small for the wafer geometry");

    int n_left = has_left ? std::max<int>(1, std::lround(N * a / d)) : 0;
    int n_right = has_right ? std::max<int>(1, std::lround(N * (d - b) / d)) : 0;
    int n_wafer = N - n_left - n_right;
    while (n_wafer < 1) {
        if (n_left >= n_right && n_left > 1) --n_left;
        else if (n_right > 1) --n_right;
        else if (n_left > (has_left ? 1 : 0)) --n_left;
        else --n_right;
        n_wafer = N - n_left - n_right;
    }

    auto tile = [&](double z0, double z1, int n, bool wafer) {
        for (int j = 0; j < n; ++j) {
            double e0 = z0 + (z1 - z0) * j / n;
            double e1 = (j + 1 == n) ? z1 : z0 + (z1 - z0) * (j + 1) / n;
            if (wafer)
                layers.push_back({e1 - e0, make(slice_value(*profile, e0, e1, rule))});
            else
                layers.push_back({e1 - e0, MaterialSpec::vacuum()});
        }
    };
    if (has_left) tile(0.0, a, n_left, false);
    tile(a, b, n_wafer, true);
    if (has_right) tile(b, d, n_right, false);

    Stack stack(left, right, std::move(layers));
    require(std::abs(stack.width - d) <= 1e-12 * d, "slice widths failed to tile the cavity");
    stack.width = d;
    return stack;
}

}  // namespace

Stack discretize(const std::optional<CompressionProfile>& profile,
                 BoundarySpec left, BoundarySpec right,
                 double d, int N, SliceRule rule) {
    return discretize_impl(profile, left, right, d, N, rule,
                           [](double m) { return cslice_material(m); });
}

Stack discretize_isotropic(const CompressionProfile& eps_profile,
                           BoundarySpec left, BoundarySpec right,
                           double d, int N, SliceRule rule) {
    return discretize_impl(std::optional<CompressionProfile>(eps_profile),
                           left, right, d, N, rule,
                           [](double eps) { return MaterialSpec::isotropic(eps); });
}

CompressionProfile parse_profile(const std::string& spec, double a, double b) {
    auto colon = spec.find(':');
    require(colon != std::string::npos, "malformed profile string: " + spec);
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);

    auto to_double = [&](const std::string& s) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed profile number: " + s);
        }
        require(pos == s.size(), "malformed profile number: " + s);
        return v;
    };

    if (kind == "const") return CompressionProfile::constant(a, b, to_double(rest));
    if (kind == "linear") {
        auto comma = rest.find(',');
        require(comma != std::string::npos, "linear profile needs two values: " + spec);
        return CompressionProfile::linear(a, b, to_double(rest.substr(0, comma)),
                                          to_double(rest.substr(comma + 1)));
    }
    if (kind == "table") {
        std::ifstream in(rest);
        require(in.good(), "cannot open table file: " + rest);
        std::vector<double> z, v;
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            double zi, vi;
            if (ls >> zi >> vi) {
                z.push_back(zi);
                v.push_back(vi);
            }
        }
        return CompressionProfile::table(std::move(z), std::move(v));
    }
    throw std::invalid_argument("unknown profile kind: " + kind);
}

std::string stack_digest(const Stack& stack) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](double x) {
        std::uint64_t bits;
        std::memcpy(&bits, &x, sizeof bits);
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    mix(static_cast<double>(static_cast<int>(stack.left.kind)));
    mix(static_cast<double>(static_cast<int>(stack.right.kind)));
    for (const auto& l : stack.layers) {
        mix(l.thickness);
        for (double c : {l.material.eps_x, l.material.eps_y, l.material.eps_z,
                         l.material.mu_x, l.material.mu_y, l.material.mu_z})
            mix(c);
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace casimir

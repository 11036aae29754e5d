#ifndef CASIMIR_MATERIALS_HPP
#define CASIMIR_MATERIALS_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace casimir {

/// Diagonal relative permittivity/permeability tensors of one homogeneous
/// slab. Lossless, passive media only: all components finite and > 0.
struct MaterialSpec {
    double eps_x = 1.0, eps_y = 1.0, eps_z = 1.0;
    double mu_x = 1.0, mu_y = 1.0, mu_z = 1.0;

    static MaterialSpec vacuum() { return MaterialSpec{}; }
    static MaterialSpec isotropic(double eps, double mu = 1.0);

    bool is_vacuum(double tol = 1e-12) const;
    bool is_isotropic(double tol = 1e-12) const;
    /// Impedance-matched uniaxial compression medium:
    /// eps = mu = diag(1/m, 1/m, m).
    bool is_cslice(double tol = 1e-12) const;

    void validate() const;
    bool operator==(const MaterialSpec&) const = default;
};

/// eps = mu = diag(1/m, 1/m, m); m = 1 gives vacuum.
MaterialSpec cslice_material(double m);

/// A positive scalar field on an interval [a, b]: either a named closed
/// form or a table interpreted as piecewise-linear samples. Used both for
/// compression factors m(z) and for scalar permittivity profiles eps(z).
struct CompressionProfile {
    struct Constant { double value; };
    struct Linear { double start, end; };   // endpoint values at a and b
    struct Table { std::vector<double> z, v; };

    double a = 0.0, b = 0.0;
    std::variant<Constant, Linear, Table> form = Constant{1.0};

    static CompressionProfile constant(double a, double b, double value);
    static CompressionProfile linear(double a, double b, double va, double vb);
    static CompressionProfile table(std::vector<double> z, std::vector<double> v);

    double operator()(double z) const;
    double width() const { return b - a; }
    void validate() const;
};

/// Delta_virtual = integral of 1/m over [a, b]. Closed forms are integrated
/// analytically; tables segment-by-segment (exact for linear interpolation).
double virtual_width(const CompressionProfile& profile);

/// C_S = (b - a) / virtual_width: the harmonic-mean compression factor.
double compression_factor(const CompressionProfile& profile);

/// d' = d - Delta + virtual_width(profile). Profile interval must lie
/// inside [0, d]. No profile means d' = d.
double effective_length(double d, const CompressionProfile& profile);
double effective_length(double d, const std::optional<CompressionProfile>& profile);

struct BoundarySpec {
    enum class Kind { IdealMirror, Vacuum, HalfSpace };
    Kind kind = Kind::IdealMirror;
    MaterialSpec material;   // meaningful for HalfSpace only

    static BoundarySpec ideal_mirror() { return {Kind::IdealMirror, {}}; }
    static BoundarySpec open_vacuum() { return {Kind::Vacuum, {}}; }
    static BoundarySpec half_space(const MaterialSpec& m);
};

struct Layer {
    double thickness;
    MaterialSpec material;
};

/// Ordered homogeneous layers tiling [0, d] between two boundaries.
struct Stack {
    BoundarySpec left, right;
    std::vector<Layer> layers;
    double width = 0.0;

    Stack() = default;
    Stack(BoundarySpec left, BoundarySpec right, std::vector<Layer> layers);
    int layer_count() const { return static_cast<int>(layers.size()); }
};

/// How a slice's scalar value is drawn from the profile. Midpoint is the
/// default contract; HarmonicMean assigns each slice the value whose
/// optical path matches the profile's exactly, making the discretized
/// virtual width independent of the slice count.
enum class SliceRule { Midpoint, HarmonicMean };

/// Slice [0, d] into N homogeneous layers whose edges include the profile
/// interval endpoints exactly; profile slices carry cslice_material(m_j),
/// the rest vacuum. Empty profile gives an all-vacuum stack.
Stack discretize(const std::optional<CompressionProfile>& profile,
                 BoundarySpec left, BoundarySpec right,
                 double d, int N, SliceRule rule = SliceRule::Midpoint);

/// Same slicing with the profile read as a scalar permittivity (mu = 1).
Stack discretize_isotropic(const CompressionProfile& eps_profile,
                           BoundarySpec left, BoundarySpec right,
                           double d, int N, SliceRule rule = SliceRule::Midpoint);

/// Profile mini-language: `const:<v>`, `linear:<va>,<vb>`, `table:<path>`.
/// For closed forms the interval [a, b] must be supplied; table files carry
/// their own z range (two whitespace-separated columns, '#' comments).
CompressionProfile parse_profile(const std::string& spec, double a, double b);

/// FNV-1a over the stack's geometric and material data, as a hex string.
std::string stack_digest(const Stack& stack);

}  // namespace casimir

#endif

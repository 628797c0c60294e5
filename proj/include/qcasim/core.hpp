#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

// Unit system: energies in eV, lengths in nm, fields in V/nm, charges in
// units of q_e. With these units 1 q_e * (V/nm) * nm = 1 eV, so no
// conversion factors appear anywhere below.

namespace qcasim {

struct InvalidGeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularGeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), best_residual(residual) {}
    double best_residual;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }

    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Rotation by +90 degrees about z (x^ -> y^, y^ -> -x^).
inline Vec3 rotate90_z(const Vec3& v) { return {-v.y, v.x, v.z}; }

struct PhysicalConstants {
    double coulomb_k = 1.4400;  // q_e^2 / 4 pi eps0, eV nm
    double epsilon_r = 1.0;

    double k_eff() const { return coulomb_k / epsilon_r; }
};

// Uniform applied electric field, V/nm. In the two-state circuit model only
// ex and ey enter the detunings; ez is absorbed into gamma_eff.
struct FieldVector {
    double ex = 0.0;
    double ey = 0.0;
    double ez = 0.0;
};

struct TwoStateParams {
    double gamma_eff = 0.010;  // eV
    double delta_o = 0.0;      // chemical bias, eV
};

enum class Role { Device, Driver };

// One three-dot molecule. The null dot sits at `center`; the active dots are
// elevated by h and separated by a_vec (pointing from dot 0 to dot 1).
struct MoleculeSpec {
    int id = 0;
    Vec3 center;       // null-dot position, nm
    Vec3 a_vec;        // dot 0 -> dot 1, nm
    double h = 0.5;    // active-dot elevation, nm
    Role role = Role::Device;
    int driver_bit = 0;     // drivers only
    int pair_id = 0;
    double pair_sign = 1.0; // handedness sign s, shared by both pair members
    bool is_output = false;

    Vec3 null_dot() const { return center; }
    Vec3 active_dot(int state) const {
        const Vec3 up{0.0, 0.0, h};
        return state ? center + up + 0.5 * a_vec : center + up - 0.5 * a_vec;
    }
    Vec3 dot0() const { return active_dot(0); }
    Vec3 dot1() const { return active_dot(1); }
};

// E_o = coulomb_k (1 - 1/sqrt2) / (epsilon_r a^2), V/nm. The field strength
// that injects a kink into an isolated cell pair; equals kink_energy(a)/(q_e a).
double field_scale_Eo(double a, const PhysicalConstants& pc = {});

// Local field detuning Delta_E = -q_e E.a, eV.
double detuning_from_field(const MoleculeSpec& m, const FieldVector& f);

}  // namespace qcasim

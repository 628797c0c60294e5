#include "qcasim/core.hpp"

namespace qcasim {

double field_scale_Eo(double a, const PhysicalConstants& pc) {
    if (!(a > 0.0))
        throw InvalidGeometryError("field_scale_Eo: dot separation a must be positive");
    const double kink_factor = 1.0 - 1.0 / std::sqrt(2.0);
    return pc.k_eff() * kink_factor / (a * a);
}

double detuning_from_field(const MoleculeSpec& m, const FieldVector& f) {
    if (!m.a_vec.finite() || !(m.a_vec.norm() > 0.0))
        throw InvalidGeometryError("detuning_from_field: molecule a_vec must be finite and nonzero");
    if (!std::isfinite(f.ex) || !std::isfinite(f.ey) || !std::isfinite(f.ez))
        throw std::invalid_argument("detuning_from_field: field components must be finite");
    // q_e = 1 in these units.
    return -(f.ex * m.a_vec.x + f.ey * m.a_vec.y + f.ez * m.a_vec.z);
}

}  // namespace qcasim

#include "qcasim/layout.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

namespace qcasim {

namespace {

using json = nlohmann::ordered_json;

double pair_sign_from_geometry(const Vec3& first_center, const Vec3& second_center,
                               const Vec3& a_vec, double fallback) {
    const Vec3 d = second_center - first_center;
    const double cross_z = d.x * a_vec.y - d.y * a_vec.x;
    if (std::abs(cross_z) < 1e-12 * (d.norm() * a_vec.norm() + 1e-300))
        return fallback;
    return cross_z > 0.0 ? 1.0 : -1.0;
}

struct Builder {
    CircuitLayout layout;
    int next_pair_id = 0;
    int next_mol_id = 0;

    explicit Builder(const LayoutParams& p) { layout.params = p; }

    // Adds a pair at `center` (pair midpoint). Members sit at -+(a/2) x^ with
    // a_vec = a y^. For drivers, member states are frozen so that the pair
    // encodes `bit` under the handedness convention (bit 1 <-> P_pair = +1).
    void add_pair(const Vec3& center, Role role, int bit, bool is_output) {
        const double a = layout.params.a;
        const Vec3 half_axis{0.5 * a, 0.0, 0.0};
        const Vec3 a_vec{0.0, a, 0.0};
        const double sign =
            pair_sign_from_geometry(center - half_axis, center + half_axis, a_vec, 1.0);
        for (int member = 0; member < 2; ++member) {
            MoleculeSpec m;
            m.id = next_mol_id++;
            m.center = member == 0 ? center - half_axis : center + half_axis;
            m.a_vec = a_vec;
            m.h = layout.params.h;
            m.role = role;
            if (role == Role::Driver)
                m.driver_bit = member == 0 ? bit : 1 - bit;
            m.pair_id = next_pair_id;
            m.pair_sign = sign;
            m.is_output = is_output && role == Role::Device;
            layout.molecules.push_back(m);
        }
        ++next_pair_id;
    }

    void driver(double cx, double cy, int bit) { add_pair({cx, cy, 0.0}, Role::Driver, bit, false); }
    void device(double cx, double cy, bool out = false) {
        add_pair({cx, cy, 0.0}, Role::Device, 0, out);
    }

    CircuitLayout finish(const std::string& name, std::vector<int> bits, bool rotated) {
        layout.name = name;
        layout.input_bits = std::move(bits);
        CircuitLayout result = rotated ? rotate_pairs(layout) : layout;
        result.validate();
        return result;
    }
};

void check_bit(int bit) {
    if (bit != 0 && bit != 1) throw LayoutError("input bit must be 0 or 1");
}

}  // namespace

std::vector<int> CircuitLayout::device_indices() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(molecules.size()); ++i)
        if (molecules[i].role == Role::Device) out.push_back(i);
    return out;
}

int CircuitLayout::device_count() const {
    return static_cast<int>(device_indices().size());
}

std::vector<PairRef> CircuitLayout::pairs() const {
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < static_cast<int>(molecules.size()); ++i)
        groups[molecules[i].pair_id].push_back(i);

    std::map<int, int> device_cell;
    {
        int cell = 0;
        for (int i : device_indices()) device_cell[i] = cell++;
    }

    std::vector<PairRef> out;
    for (const auto& [pid, members] : groups) {
        if (members.size() != 2)
            throw LayoutError("pair " + std::to_string(pid) + " has " +
                              std::to_string(members.size()) + " members, expected 2");
        PairRef p;
        p.pair_id = pid;
        p.first = members[0];
        p.second = members[1];
        const MoleculeSpec& m1 = molecules[p.first];
        const MoleculeSpec& m2 = molecules[p.second];
        if (m1.role != m2.role)
            throw LayoutError("pair " + std::to_string(pid) + " mixes device and driver roles");
        p.is_driver = m1.role == Role::Driver;
        if (!p.is_driver) {
            p.device_cell_first = device_cell.at(p.first);
            p.device_cell_second = device_cell.at(p.second);
        }
        if (m1.pair_sign != m2.pair_sign)
            throw LayoutError("pair " + std::to_string(pid) + " members disagree on pair_sign");
        p.sign = m1.pair_sign;
        p.is_output = m1.is_output || m2.is_output;
        out.push_back(p);
    }
    return out;
}

std::vector<PairRef> CircuitLayout::device_pairs() const {
    std::vector<PairRef> out;
    for (const PairRef& p : pairs())
        if (!p.is_driver) out.push_back(p);
    return out;
}

std::vector<PairRef> CircuitLayout::output_pairs() const {
    std::vector<PairRef> out;
    for (const PairRef& p : device_pairs())
        if (p.is_output) out.push_back(p);
    return out;
}

void CircuitLayout::validate() const {
    if (!(params.a > 0.0)) throw LayoutError("a must be positive");
    if (!(params.h >= 0.0)) throw LayoutError("h must be non-negative");
    if (!(params.pitch > 0.0)) throw LayoutError("pitch must be positive");
    if (!(params.cell.gamma_eff > 0.0)) throw LayoutError("gamma_eff must be positive");
    if (!(params.constants.k_eff() > 0.0)) throw LayoutError("coulomb_k/epsilon_r must be positive");
    if (molecules.empty()) throw LayoutError("layout has no molecules");

    std::set<int> ids;
    for (const MoleculeSpec& m : molecules) {
        if (!m.center.finite() || !m.a_vec.finite())
            throw LayoutError("molecule " + std::to_string(m.id) + " has non-finite coordinates");
        if (!(m.a_vec.norm() > 0.0))
            throw LayoutError("molecule " + std::to_string(m.id) + " has zero a_vec");
        if (!(m.h >= 0.0))
            throw LayoutError("molecule " + std::to_string(m.id) + " has negative h");
        if (m.role == Role::Driver && m.driver_bit != 0 && m.driver_bit != 1)
            throw LayoutError("molecule " + std::to_string(m.id) + " has driver_bit outside {0,1}");
        if (!ids.insert(m.id).second)
            throw LayoutError("duplicate molecule id " + std::to_string(m.id));
    }

    pairs();  // throws on malformed grouping

    // Overlap guard: null-dot centers no closer than a/2.
    const double min_sep = 0.5 * params.a;
    for (std::size_t i = 0; i < molecules.size(); ++i)
        for (std::size_t j = i + 1; j < molecules.size(); ++j)
            if ((molecules[i].center - molecules[j].center).norm() < min_sep)
                throw LayoutError("molecules " + std::to_string(molecules[i].id) + " and " +
                                  std::to_string(molecules[j].id) + " overlap");
}

CircuitLayout build_wire(int n_pairs, int input_bit, bool rotated, const LayoutParams& p) {
    if (n_pairs < 1) throw LayoutError("wire needs at least one device pair");
    if (2 * n_pairs > 14) throw LayoutError("stock builders cap device count at M = 14");
    check_bit(input_bit);
    Builder b(p);
    const double P = p.pitch;
    b.driver(0.0, 0.0, input_bit);
    for (int i = 1; i <= n_pairs; ++i) b.device(i * P, 0.0, i == n_pairs);
    return b.finish("wire", {input_bit}, rotated);
}

CircuitLayout build_fan_in(int input_bit, bool rotated, const LayoutParams& p) {
    check_bit(input_bit);
    Builder b(p);
    const double P = p.pitch;
    // Two drivers feed two branch pairs; branches converge vertically onto a
    // junction pair, followed by a three-pair output tail.
    b.driver(0.0, P, input_bit);
    b.driver(0.0, -P, input_bit);
    b.device(P, P);
    b.device(P, -P);
    b.device(P, 0.0);  // junction
    b.device(2 * P, 0.0);
    b.device(3 * P, 0.0);
    b.device(4 * P, 0.0, true);
    return b.finish("fan_in", {input_bit}, rotated);
}

CircuitLayout build_fan_out(int input_bit, bool rotated, const LayoutParams& p) {
    check_bit(input_bit);
    Builder b(p);
    const double P = p.pitch;
    b.driver(0.0, 0.0, input_bit);
    b.device(P, 0.0);
    b.device(2 * P, 0.0);  // junction
    b.device(2 * P, P);
    b.device(2 * P, -P);
    b.device(2 * P, 2 * P, true);
    b.device(2 * P, -2 * P, true);
    return b.finish("fan_out", {input_bit}, rotated);
}

CircuitLayout build_inverter(int input_bit, bool rotated, const LayoutParams& p) {
    check_bit(input_bit);
    Builder b(p);
    const double P = p.pitch;
    // The driver fans out into two parallel branches; the branch ends couple
    // diagonally (next-nearest-neighbor) onto the output pair, inverting the
    // bit. A tail pair reinforces the output.
    b.driver(0.0, 0.0, input_bit);
    b.device(0.0, P);
    b.device(0.0, -P);
    b.device(P, P);
    b.device(P, -P);
    b.device(2 * P, 0.0, true);
    b.device(3 * P, 0.0);
    return b.finish("inverter", {input_bit}, rotated);
}

CircuitLayout build_majority(int bit_a, int bit_b, int bit_c, bool rotated,
                             const LayoutParams& p) {
    check_bit(bit_a);
    check_bit(bit_b);
    check_bit(bit_c);
    Builder b(p);
    const double P = p.pitch;
    // Inputs: A from the west, B from the north, C from the south. Each
    // driver is separated from the central pair by one arm pair; the output
    // is the second pair of the east wire.
    b.driver(-2 * P, 0.0, bit_a);
    b.driver(0.0, 2 * P, bit_b);
    b.driver(0.0, -2 * P, bit_c);
    b.device(-P, 0.0);
    b.device(0.0, P);
    b.device(0.0, -P);
    b.device(0.0, 0.0);  // central pair
    b.device(P, 0.0);
    b.device(2 * P, 0.0, true);
    return b.finish("majority", {bit_a, bit_b, bit_c}, rotated);
}

CircuitLayout rotate_pairs(const CircuitLayout& layout) {
    CircuitLayout out = layout;
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < static_cast<int>(out.molecules.size()); ++i)
        groups[out.molecules[i].pair_id].push_back(i);

    for (const auto& [pid, members] : groups) {
        if (members.size() != 2)
            throw LayoutError("pair " + std::to_string(pid) + " has " +
                              std::to_string(members.size()) + " members, expected 2");
        const Vec3 pc = 0.5 * (out.molecules[members[0]].center + out.molecules[members[1]].center);
        for (int i : members) {
            MoleculeSpec& m = out.molecules[i];
            m.center = pc + rotate90_z(m.center - pc);
            m.a_vec = rotate90_z(m.a_vec);
        }
        MoleculeSpec& m1 = out.molecules[members[0]];
        MoleculeSpec& m2 = out.molecules[members[1]];
        const double s = pair_sign_from_geometry(m1.center, m2.center, m1.a_vec, m1.pair_sign);
        m1.pair_sign = s;
        m2.pair_sign = s;
    }

    bool all_perp = true;
    for (const MoleculeSpec& m : out.molecules)
        if (std::abs(m.a_vec.y) > 0.0) all_perp = false;
    out.rotated = all_perp;
    return out;
}

namespace {

json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from_json(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 3)
        throw LayoutError(what + " must be an array of 3 numbers");
    for (const auto& c : j)
        if (!c.is_number()) throw LayoutError(what + " must contain numbers only");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key))
            throw LayoutError("unknown key \"" + key + "\" in " + where);
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw LayoutError("missing key \"" + key + "\" in " + where);
    return *it;
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
    const json& v = require(obj, key, where);
    if (!v.is_number()) throw LayoutError("key \"" + key + "\" in " + where + " must be a number");
    return v.get<double>();
}

}  // namespace

CircuitLayout load_layout(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw LayoutError(std::string("layout parse error: ") + e.what());
    }
    if (!doc.is_object()) throw LayoutError("layout document must be a JSON object");
    reject_unknown_keys(doc, {"format_version", "constants", "cell", "metadata", "molecules"},
                        "document root");

    const json& ver = require(doc, "format_version", "document root");
    if (!ver.is_number_integer() || ver.get<int>() != 1)
        throw LayoutError("unsupported format_version (expected 1)");

    CircuitLayout layout;

    const json& constants = require(doc, "constants", "document root");
    reject_unknown_keys(constants, {"coulomb_k_eV_nm", "epsilon_r"}, "constants");
    layout.params.constants.coulomb_k = require_number(constants, "coulomb_k_eV_nm", "constants");
    layout.params.constants.epsilon_r = require_number(constants, "epsilon_r", "constants");

    const json& cell = require(doc, "cell", "document root");
    reject_unknown_keys(cell, {"a_nm", "h_nm", "pitch_nm", "gamma_eff_eV", "delta_o_eV"}, "cell");
    layout.params.a = require_number(cell, "a_nm", "cell");
    layout.params.h = require_number(cell, "h_nm", "cell");
    layout.params.pitch = require_number(cell, "pitch_nm", "cell");
    layout.params.cell.gamma_eff = require_number(cell, "gamma_eff_eV", "cell");
    layout.params.cell.delta_o = require_number(cell, "delta_o_eV", "cell");

    const json& meta = require(doc, "metadata", "document root");
    reject_unknown_keys(meta, {"name", "rotated", "input_bits"}, "metadata");
    layout.name = require(meta, "name", "metadata").get<std::string>();
    layout.rotated = require(meta, "rotated", "metadata").get<bool>();
    for (const auto& b : require(meta, "input_bits", "metadata"))
        layout.input_bits.push_back(b.get<int>());

    const json& molecules = require(doc, "molecules", "document root");
    if (!molecules.is_array()) throw LayoutError("molecules must be an array");
    for (std::size_t i = 0; i < molecules.size(); ++i) {
        const json& jm = molecules[i];
        const std::string where = "molecules[" + std::to_string(i) + "]";
        reject_unknown_keys(
            jm, {"id", "center_nm", "a_vec_nm", "role", "driver_bit", "pair_id", "pair_sign",
                 "is_output"},
            where);
        MoleculeSpec m;
        m.id = require(jm, "id", where).get<int>();
        m.center = vec_from_json(require(jm, "center_nm", where), where + ".center_nm");
        m.a_vec = vec_from_json(require(jm, "a_vec_nm", where), where + ".a_vec_nm");
        m.h = layout.params.h;
        const std::string role = require(jm, "role", where).get<std::string>();
        if (role == "device")
            m.role = Role::Device;
        else if (role == "driver")
            m.role = Role::Driver;
        else
            throw LayoutError(where + ".role must be \"device\" or \"driver\"");
        if (m.role == Role::Driver) {
            m.driver_bit = require(jm, "driver_bit", where).get<int>();
        } else if (jm.contains("driver_bit")) {
            throw LayoutError(where + ": driver_bit is only valid on driver molecules");
        }
        m.pair_id = require(jm, "pair_id", where).get<int>();
        m.pair_sign = require_number(jm, "pair_sign", where);
        if (m.pair_sign != 1.0 && m.pair_sign != -1.0)
            throw LayoutError(where + ".pair_sign must be +1 or -1");
        if (jm.contains("is_output")) {
            m.is_output = jm["is_output"].get<bool>();
            if (m.is_output && m.role == Role::Driver)
                throw LayoutError(where + ": driver molecules cannot be outputs");
        }
        layout.molecules.push_back(m);
    }

    layout.validate();
    return layout;
}

std::string save_layout(const CircuitLayout& layout) {
    json doc;
    doc["format_version"] = 1;
    doc["constants"] = {{"coulomb_k_eV_nm", layout.params.constants.coulomb_k},
                        {"epsilon_r", layout.params.constants.epsilon_r}};
    doc["cell"] = {{"a_nm", layout.params.a},
                   {"h_nm", layout.params.h},
                   {"pitch_nm", layout.params.pitch},
                   {"gamma_eff_eV", layout.params.cell.gamma_eff},
                   {"delta_o_eV", layout.params.cell.delta_o}};
    doc["metadata"] = {{"name", layout.name},
                       {"rotated", layout.rotated},
                       {"input_bits", layout.input_bits}};
    json mols = json::array();
    for (const MoleculeSpec& m : layout.molecules) {
        json jm;
        jm["id"] = m.id;
        jm["center_nm"] = vec_to_json(m.center);
        jm["a_vec_nm"] = vec_to_json(m.a_vec);
        jm["role"] = m.role == Role::Device ? "device" : "driver";
        if (m.role == Role::Driver) jm["driver_bit"] = m.driver_bit;
        jm["pair_id"] = m.pair_id;
        jm["pair_sign"] = m.pair_sign;
        jm["is_output"] = m.is_output;
        mols.push_back(jm);
    }
    doc["molecules"] = mols;
    return doc.dump(2) + "\n";
}

}  // namespace qcasim

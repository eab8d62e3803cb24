// Copyright 2026 The hybridqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hybridqc/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <toml.hpp>

namespace hqc::harness {

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& message) {
    throw ConfigInvalid(field, message);
}

std::string join(std::string_view prefix, std::string_view key) {
    return prefix.empty() ? std::string(key) : std::string(prefix) + "." + std::string(key);
}

// Reading -------------------------------------------------------------------

class Reader {
public:
    Reader(const toml::table* table, std::string path) : table_(table), path_(std::move(path)) {}

    bool present() const { return table_ != nullptr; }
    bool has(std::string_view key) const { return table_ != nullptr && table_->contains(key); }
    const std::string& path() const { return path_; }

    Reader child(std::string_view key) const {
        const toml::table* sub = nullptr;
        if (table_ != nullptr) {
            if (const toml::node* n = table_->get(key)) {
                sub = n->as_table();
                if (sub == nullptr) invalid(join(path_, key), "expected a table");
            }
        }
        return {sub, join(path_, key)};
    }

    const toml::node* node(std::string_view key) const {
        return table_ == nullptr ? nullptr : table_->get(key);
    }

    double number(std::string_view key, std::optional<double> fallback = std::nullopt) const {
        const toml::node* n = node(key);
        if (n == nullptr) {
            if (fallback) return *fallback;
            invalid(join(path_, key), "missing");
        }
        return as_number(*n, join(path_, key));
    }

    std::int64_t integer(std::string_view key, std::optional<std::int64_t> fallback = std::nullopt) const {
        const toml::node* n = node(key);
        if (n == nullptr) {
            if (fallback) return *fallback;
            invalid(join(path_, key), "missing");
        }
        if (auto v = n->value_exact<std::int64_t>()) return *v;
        invalid(join(path_, key), "expected an integer");
    }

    std::string string(std::string_view key, std::optional<std::string> fallback = std::nullopt) const {
        const toml::node* n = node(key);
        if (n == nullptr) {
            if (fallback) return *fallback;
            invalid(join(path_, key), "missing");
        }
        if (auto v = n->value_exact<std::string>()) return *v;
        invalid(join(path_, key), "expected a string");
    }

    std::vector<double> numbers(std::string_view key, bool required = true) const {
        const toml::node* n = node(key);
        if (n == nullptr) {
            if (required) invalid(join(path_, key), "missing");
            return {};
        }
        return as_numbers(*n, join(path_, key));
    }

    CMatrix matrix(std::string_view key, bool required = true) const {
        const toml::node* n = node(key);
        const std::string field = join(path_, key);
        if (n == nullptr) {
            if (required) invalid(field, "missing");
            return {};
        }
        const toml::array* rows = n->as_array();
        if (rows == nullptr || rows->empty()) invalid(field, "expected a non-empty array of rows");
        const auto d = static_cast<Eigen::Index>(rows->size());
        CMatrix m(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            const CVector row = as_complex_vector(*rows->get(static_cast<std::size_t>(i)),
                                                  field + "[" + std::to_string(i) + "]");
            if (row.size() != d) invalid(field, "matrix must be square");
            m.row(i) = row.transpose();
        }
        return m;
    }

    std::vector<CVector> complex_vectors(std::string_view key) const {
        const toml::node* n = node(key);
        const std::string field = join(path_, key);
        if (n == nullptr) invalid(field, "missing");
        const toml::array* items = n->as_array();
        if (items == nullptr) invalid(field, "expected an array of states");
        std::vector<CVector> out;
        for (std::size_t i = 0; i < items->size(); ++i) {
            out.push_back(as_complex_vector(*items->get(i), field + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    const toml::array* array_of_tables(std::string_view key) const {
        const toml::node* n = node(key);
        if (n == nullptr) return nullptr;
        const toml::array* arr = n->as_array();
        if (arr == nullptr || !arr->is_array_of_tables()) {
            invalid(join(path_, key), "expected an array of tables");
        }
        return arr;
    }

    static double as_number(const toml::node& n, const std::string& field) {
        if (auto v = n.value_exact<double>()) return *v;
        if (auto v = n.value_exact<std::int64_t>()) return static_cast<double>(*v);
        invalid(field, "expected a number");
    }

    static std::vector<double> as_numbers(const toml::node& n, const std::string& field) {
        const toml::array* arr = n.as_array();
        if (arr == nullptr) invalid(field, "expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < arr->size(); ++i) {
            out.push_back(as_number(*arr->get(i), field + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    static CVector as_complex_vector(const toml::node& n, const std::string& field) {
        const toml::array* arr = n.as_array();
        if (arr == nullptr) invalid(field, "expected an array of [re, im] pairs");
        CVector v(static_cast<Eigen::Index>(arr->size()));
        for (std::size_t i = 0; i < arr->size(); ++i) {
            const std::string entry = field + "[" + std::to_string(i) + "]";
            const std::vector<double> pair = as_numbers(*arr->get(i), entry);
            if (pair.size() != 2) invalid(entry, "expected [re, im]");
            v[static_cast<Eigen::Index>(i)] = Complex(pair[0], pair[1]);
        }
        return v;
    }

private:
    const toml::table* table_;
    std::string path_;
};

DensityConfig read_density(const Reader& r) {
    DensityConfig d;
    const Reader c = r.child("classical");
    if (!c.present()) invalid(c.path(), "missing");
    d.classical.kind = c.string("kind");
    d.classical.q0 = c.numbers("q0");
    d.classical.p0 = c.numbers("p0");
    if (d.classical.kind == "gaussian") {
        d.classical.sigma_q = c.numbers("sigma_q");
        d.classical.sigma_p = c.numbers("sigma_p");
    }
    const Reader q = r.child("quantum");
    if (!q.present()) invalid(q.path(), "missing");
    d.quantum.kind = q.string("kind");
    if (d.quantum.kind == "point_mixture") {
        d.quantum.states = q.complex_vectors("states");
        d.quantum.weights = q.numbers("weights");
    } else if (d.quantum.kind == "quadratic_form") {
        d.quantum.base = q.matrix("base");
        d.quantum.slope = q.matrix("slope", false);
        d.quantum.slope_axis = q.integer("slope_axis", 0);
    }
    return d;
}

// Writing -------------------------------------------------------------------

toml::array to_toml(const std::vector<double>& v) {
    toml::array a;
    for (double x : v) a.push_back(x);
    return a;
}

toml::array to_toml(const CVector& v) {
    toml::array a;
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(toml::array{v[i].real(), v[i].imag()});
    return a;
}

toml::array to_toml(const CMatrix& m) {
    toml::array rows;
    for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(to_toml(CVector(m.row(i).transpose())));
    return rows;
}

toml::table density_table(const DensityConfig& d) {
    toml::table classical{{"kind", d.classical.kind},
                          {"q0", to_toml(d.classical.q0)},
                          {"p0", to_toml(d.classical.p0)}};
    if (d.classical.kind == "gaussian") {
        classical.insert("sigma_q", to_toml(d.classical.sigma_q));
        classical.insert("sigma_p", to_toml(d.classical.sigma_p));
    }
    toml::table quantum{{"kind", d.quantum.kind}};
    if (d.quantum.kind == "point_mixture") {
        toml::array states;
        for (const auto& s : d.quantum.states) states.push_back(to_toml(s));
        quantum.insert("states", std::move(states));
        quantum.insert("weights", to_toml(d.quantum.weights));
    } else if (d.quantum.kind == "quadratic_form") {
        quantum.insert("base", to_toml(d.quantum.base));
        if (d.quantum.slope.size() > 0) quantum.insert("slope", to_toml(d.quantum.slope));
        quantum.insert("slope_axis", static_cast<std::int64_t>(d.quantum.slope_axis));
    }
    return toml::table{{"classical", std::move(classical)}, {"quantum", std::move(quantum)}};
}

// Validation helpers -----------------------------------------------------------

void check_hermitian(const CMatrix& m, Eigen::Index d, const std::string& field) {
    if (m.rows() != d || m.cols() != d) {
        invalid(field, "expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
    }
    if (!m.allFinite()) invalid(field, "entries must be finite");
    if (hermiticity_deviation(m) > kHermitianTolerance) invalid(field, "matrix is not Hermitian");
}

double min_eigenvalue(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void validate_density(const DensityConfig& d, const ScenarioConfig& cfg, const std::string& field) {
    const auto k = static_cast<std::size_t>(cfg.classical_dof);
    const auto& c = d.classical;
    if (c.kind != "gaussian" && c.kind != "point_mass") {
        invalid(field + ".classical.kind", "expected 'gaussian' or 'point_mass'");
    }
    if (c.q0.size() != k) invalid(field + ".classical.q0", "length must equal classical_dof");
    if (c.p0.size() != k) invalid(field + ".classical.p0", "length must equal classical_dof");
    if (c.kind == "gaussian") {
        if (c.sigma_q.size() != k) invalid(field + ".classical.sigma_q", "length must equal classical_dof");
        if (c.sigma_p.size() != k) invalid(field + ".classical.sigma_p", "length must equal classical_dof");
        for (double s : c.sigma_q)
            if (!(s > 0.0)) invalid(field + ".classical.sigma_q", "widths must be positive");
        for (double s : c.sigma_p)
            if (!(s > 0.0)) invalid(field + ".classical.sigma_p", "widths must be positive");
    }
    const auto& q = d.quantum;
    const std::string qf = field + ".quantum";
    if (q.kind == "haar") return;
    if (q.kind == "point_mixture") {
        if (q.states.empty()) invalid(qf + ".states", "needs at least one state");
        if (q.states.size() != q.weights.size()) invalid(qf + ".weights", "one weight per state");
        double total = 0.0;
        for (std::size_t i = 0; i < q.states.size(); ++i) {
            const std::string sf = qf + ".states[" + std::to_string(i) + "]";
            if (q.states[i].size() != cfg.quantum_dim) invalid(sf, "length must equal quantum_dim");
            if (std::abs(q.states[i].squaredNorm() - 1.0) > kNormTolerance) invalid(sf, "state is not unit norm");
            if (!(q.weights[i] >= 0.0)) invalid(qf + ".weights", "weights must be non-negative");
            total += q.weights[i];
        }
        if (std::abs(total - 1.0) > 1e-12) invalid(qf + ".weights", "weights must sum to 1");
        return;
    }
    if (q.kind == "quadratic_form") {
        check_hermitian(q.base, cfg.quantum_dim, qf + ".base");
        if (q.slope.size() > 0) {
            check_hermitian(q.slope, cfg.quantum_dim, qf + ".slope");
            if (q.slope_axis < 0 || q.slope_axis >= cfg.classical_dof) {
                invalid(qf + ".slope_axis", "must index a classical coordinate");
            }
            if (min_eigenvalue(q.base - q.slope) < -kPositivityTolerance ||
                min_eigenvalue(q.base + q.slope) < -kPositivityTolerance) {
                invalid(qf + ".slope", "base +- slope must be positive semidefinite");
            }
        }
        if (min_eigenvalue(q.base) < -kPositivityTolerance || !(q.base.trace().real() > 0.0)) {
            invalid(qf + ".base", "must be positive semidefinite with positive trace");
        }
        return;
    }
    invalid(qf + ".kind", "expected 'haar', 'point_mixture' or 'quadratic_form'");
}

bool close(double a, double b, double tol) {
    return a == b || std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

bool close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!close(a[i], b[i], tol)) return false;
    return true;
}

bool close(const CMatrix& a, const CMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (!close(a.data()[i].real(), b.data()[i].real(), tol) ||
            !close(a.data()[i].imag(), b.data()[i].imag(), tol)) {
            return false;
        }
    }
    return true;
}

bool close(const DensityConfig& a, const DensityConfig& b, double tol) {
    if (a.classical.kind != b.classical.kind || a.quantum.kind != b.quantum.kind) return false;
    if (!close(a.classical.q0, b.classical.q0, tol) || !close(a.classical.p0, b.classical.p0, tol) ||
        !close(a.classical.sigma_q, b.classical.sigma_q, tol) ||
        !close(a.classical.sigma_p, b.classical.sigma_p, tol)) {
        return false;
    }
    if (a.quantum.states.size() != b.quantum.states.size()) return false;
    for (std::size_t i = 0; i < a.quantum.states.size(); ++i)
        if (!close(CMatrix(a.quantum.states[i]), CMatrix(b.quantum.states[i]), tol)) return false;
    return close(a.quantum.weights, b.quantum.weights, tol) &&
           close(a.quantum.base, b.quantum.base, tol) &&
           close(a.quantum.slope, b.quantum.slope, tol) &&
           a.quantum.slope_axis == b.quantum.slope_axis;
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
    toml::table root;
    try {
        root = toml::parse(text);
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << e.description() << " (line " << e.source().begin.line << ")";
        invalid("<document>", os.str());
    }
    const Reader top(&root, "");
    ScenarioConfig cfg;
    cfg.name = top.string("name", cfg.name);
    const std::int64_t seed = top.integer("seed", 1);
    if (seed < 0) invalid("seed", "must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(seed);
    const std::int64_t particles = top.integer("particles", 1000);
    if (particles < 1) invalid("particles", "must be at least 1");
    cfg.particles = static_cast<std::size_t>(particles);

    const Reader system = top.child("system");
    cfg.quantum_dim = system.integer("quantum_dim");
    cfg.classical_dof = system.integer("classical_dof");
    cfg.hbar = system.number("hbar", 1.0);

    const Reader ham = top.child("hamiltonian");
    const Reader hc = ham.child("classical");
    cfg.classical_hamiltonian.kind = hc.string("kind", "zero");
    cfg.classical_hamiltonian.mass = hc.number("mass", 1.0);
    cfg.classical_hamiltonian.frequency = hc.number("frequency", 1.0);
    cfg.classical_hamiltonian.q_coefficients = hc.numbers("q_coefficients", false);
    cfg.classical_hamiltonian.p_coefficients = hc.numbers("p_coefficients", false);
    cfg.quantum_hamiltonian = ham.child("quantum").matrix("matrix");
    const Reader vi = ham.child("interaction");
    cfg.interaction.kind = vi.string("kind", "zero");
    if (cfg.interaction.kind == "linear_q") {
        cfg.interaction.coupling = vi.number("coupling");
        cfg.interaction.axis = vi.integer("axis", 0);
        cfg.interaction.op = vi.matrix("operator");
    }

    const Reader integ = top.child("integrator");
    cfg.dt = integ.number("dt");
    cfg.horizon = integ.number("horizon");
    cfg.observation_times = integ.numbers("observation_times", false);
    if (cfg.observation_times.empty()) cfg.observation_times = {0.0, cfg.horizon};

    const Reader density = top.child("density");
    if (!density.present()) invalid("density", "missing");
    cfg.density_a = read_density(density.child("a"));
    if (density.has("b")) cfg.density_b = read_density(density.child("b"));
    cfg.pairing = top.child("compare").string("pairing", cfg.density_b ? "explicit" : "none");

    if (const toml::array* axes = top.child("grid").array_of_tables("axis")) {
        std::vector<GridAxis> grid;
        for (std::size_t i = 0; i < axes->size(); ++i) {
            const Reader a(axes->get(i)->as_table(), "grid.axis[" + std::to_string(i) + "]");
            GridAxis axis;
            const std::string coord = a.string("coordinate");
            if (coord == "q") {
                axis.coordinate = GridCoordinate::Position;
            } else if (coord == "p") {
                axis.coordinate = GridCoordinate::Momentum;
            } else {
                invalid(a.path() + ".coordinate", "expected 'q' or 'p'");
            }
            axis.index = a.integer("index", 0);
            axis.lower = a.number("lower");
            axis.upper = a.number("upper");
            const std::int64_t bins = a.integer("bins");
            if (bins < 1) invalid(a.path() + ".bins", "must be at least 1");
            axis.bins = static_cast<std::size_t>(bins);
            grid.push_back(axis);
        }
        cfg.grid = std::move(grid);
    }
    cfg.output_directory = top.child("output").string("directory", cfg.output_directory);

    validate(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) invalid("<file>", "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

namespace {

toml::table config_table(const ScenarioConfig& cfg) {
    toml::table root{{"name", cfg.name},
                     {"seed", static_cast<std::int64_t>(cfg.seed)},
                     {"particles", static_cast<std::int64_t>(cfg.particles)}};
    root.insert("system", toml::table{{"quantum_dim", static_cast<std::int64_t>(cfg.quantum_dim)},
                                      {"classical_dof", static_cast<std::int64_t>(cfg.classical_dof)},
                                      {"hbar", cfg.hbar}});

    toml::table classical{{"kind", cfg.classical_hamiltonian.kind},
                          {"mass", cfg.classical_hamiltonian.mass},
                          {"frequency", cfg.classical_hamiltonian.frequency}};
    if (cfg.classical_hamiltonian.kind == "polynomial") {
        classical.insert("q_coefficients", to_toml(cfg.classical_hamiltonian.q_coefficients));
        classical.insert("p_coefficients", to_toml(cfg.classical_hamiltonian.p_coefficients));
    }
    toml::table interaction{{"kind", cfg.interaction.kind}};
    if (cfg.interaction.kind == "linear_q") {
        interaction.insert("coupling", cfg.interaction.coupling);
        interaction.insert("axis", static_cast<std::int64_t>(cfg.interaction.axis));
        interaction.insert("operator", to_toml(cfg.interaction.op));
    }
    root.insert("hamiltonian",
                toml::table{{"classical", std::move(classical)},
                            {"quantum", toml::table{{"matrix", to_toml(cfg.quantum_hamiltonian)}}},
                            {"interaction", std::move(interaction)}});

    root.insert("integrator", toml::table{{"dt", cfg.dt},
                                          {"horizon", cfg.horizon},
                                          {"observation_times", to_toml(cfg.observation_times)}});

    toml::table density{{"a", density_table(cfg.density_a)}};
    if (cfg.density_b) density.insert("b", density_table(*cfg.density_b));
    root.insert("density", std::move(density));
    root.insert("compare", toml::table{{"pairing", cfg.pairing}});

    if (cfg.grid) {
        toml::array axes;
        for (const auto& a : *cfg.grid) {
            axes.push_back(toml::table{
                {"coordinate", a.coordinate == GridCoordinate::Position ? "q" : "p"},
                {"index", static_cast<std::int64_t>(a.index)},
                {"lower", a.lower},
                {"upper", a.upper},
                {"bins", static_cast<std::int64_t>(a.bins)}});
        }
        root.insert("grid", toml::table{{"axis", std::move(axes)}});
    }
    root.insert("output", toml::table{{"directory", cfg.output_directory}});
    return root;
}

}  // namespace

std::string emit_config(const ScenarioConfig& cfg) {
    std::ostringstream os;
    os << config_table(cfg) << '\n';
    return os.str();
}

std::string config_json(const ScenarioConfig& cfg) {
    std::ostringstream os;
    os << toml::json_formatter{config_table(cfg)};
    return os.str();
}

void validate(const ScenarioConfig& cfg) {
    if (cfg.quantum_dim < 2) invalid("system.quantum_dim", "must be at least 2");
    if (cfg.classical_dof < 0) invalid("system.classical_dof", "must be non-negative");
    if (!(cfg.hbar > 0.0)) invalid("system.hbar", "must be positive");
    if (cfg.particles < 1) invalid("particles", "must be at least 1");

    const auto& hc = cfg.classical_hamiltonian;
    if (hc.kind != "harmonic" && hc.kind != "free" && hc.kind != "polynomial" && hc.kind != "zero") {
        invalid("hamiltonian.classical.kind", "expected harmonic, free, polynomial or zero");
    }
    if ((hc.kind == "harmonic" || hc.kind == "free") && !(hc.mass > 0.0)) {
        invalid("hamiltonian.classical.mass", "must be positive");
    }
    check_hermitian(cfg.quantum_hamiltonian, cfg.quantum_dim, "hamiltonian.quantum.matrix");
    if (cfg.interaction.kind == "linear_q") {
        check_hermitian(cfg.interaction.op, cfg.quantum_dim, "hamiltonian.interaction.operator");
        if (cfg.interaction.axis < 0 || cfg.interaction.axis >= cfg.classical_dof) {
            invalid("hamiltonian.interaction.axis", "must index a classical coordinate");
        }
        if (!std::isfinite(cfg.interaction.coupling)) {
            invalid("hamiltonian.interaction.coupling", "must be finite");
        }
    } else if (cfg.interaction.kind != "zero") {
        invalid("hamiltonian.interaction.kind", "expected 'zero' or 'linear_q'");
    }

    if (!(cfg.dt > 0.0)) invalid("integrator.dt", "must be positive");
    if (!(cfg.horizon > 0.0)) invalid("integrator.horizon", "must be positive");
    if (cfg.dt > cfg.horizon) invalid("integrator.dt", "must not exceed the horizon");
    if (cfg.observation_times.empty()) invalid("integrator.observation_times", "needs at least one time");
    for (std::size_t i = 0; i < cfg.observation_times.size(); ++i) {
        const double t = cfg.observation_times[i];
        if (!(t >= 0.0 && t <= cfg.horizon)) {
            invalid("integrator.observation_times", "times must lie in [0, horizon]");
        }
        if (i > 0 && !(t > cfg.observation_times[i - 1])) {
            invalid("integrator.observation_times", "times must be strictly increasing");
        }
    }

    validate_density(cfg.density_a, cfg, "density.a");
    if (cfg.density_b) validate_density(*cfg.density_b, cfg, "density.b");
    if (cfg.pairing == "none") {
        if (cfg.density_b) invalid("compare.pairing", "density.b given but pairing is 'none'");
    } else if (cfg.pairing == "explicit") {
        if (!cfg.density_b) invalid("density.b", "explicit pairing needs density.b");
    } else if (cfg.pairing == "same_moment") {
        if (cfg.density_b) invalid("density.b", "same_moment pairing derives density.b itself");
    } else {
        invalid("compare.pairing", "expected none, explicit or same_moment");
    }

    if (cfg.grid) {
        if (cfg.grid->empty()) invalid("grid.axis", "needs at least one axis");
        for (std::size_t i = 0; i < cfg.grid->size(); ++i) {
            const auto& a = (*cfg.grid)[i];
            const std::string field = "grid.axis[" + std::to_string(i) + "]";
            if (a.index < 0 || a.index >= cfg.classical_dof) invalid(field + ".index", "out of range");
            if (!std::isfinite(a.lower) || !std::isfinite(a.upper) || !(a.upper > a.lower)) {
                invalid(field, "bounds must be finite with upper > lower");
            }
            if (a.bins < 1) invalid(field + ".bins", "must be at least 1");
        }
    }

    // Remaining invariants (gradient consistency, density positivity) are
    // checked by the library constructors.
    try {
        build_hamiltonian(cfg);
    } catch (const ConfigInvalid&) {
        throw;
    } catch (const Error& e) {
        invalid("hamiltonian", e.what());
    }
    try {
        build_densities(cfg);
    } catch (const ConfigInvalid&) {
        throw;
    } catch (const Error& e) {
        invalid("density", e.what());
    }
}

HybridHamiltonian build_hamiltonian(const ScenarioConfig& cfg) {
    std::shared_ptr<const ClassicalHamiltonian> hc;
    const auto& c = cfg.classical_hamiltonian;
    if (c.kind == "harmonic") {
        hc = std::make_shared<HarmonicOscillator>(c.mass, c.frequency);
    } else if (c.kind == "free") {
        hc = std::make_shared<FreeParticle>(c.mass);
    } else if (c.kind == "polynomial") {
        hc = std::make_shared<SeparablePolynomial>(c.q_coefficients, c.p_coefficients);
    } else {
        hc = std::make_shared<ZeroClassical>();
    }
    std::shared_ptr<const Interaction> vi;
    if (cfg.interaction.kind == "linear_q") {
        vi = std::make_shared<LinearCoupling>(cfg.interaction.coupling,
                                              HermitianOperator(cfg.interaction.op),
                                              cfg.interaction.axis);
    } else {
        vi = std::make_shared<ZeroInteraction>();
    }
    return HybridHamiltonian(cfg.classical_dof, std::move(hc),
                             HermitianOperator(cfg.quantum_hamiltonian), std::move(vi), cfg.hbar);
}

DensitySpec build_density(const ScenarioConfig& cfg, const DensityConfig& d) {
    auto vec = [](const std::vector<double>& v) {
        return RVector(Eigen::Map<const RVector>(v.data(), static_cast<Eigen::Index>(v.size())));
    };
    ClassicalFactor classical;
    if (d.classical.kind == "gaussian") {
        classical = GaussianFactor{vec(d.classical.q0), vec(d.classical.p0), vec(d.classical.sigma_q),
                                   vec(d.classical.sigma_p)};
    } else {
        classical = PointMassFactor{vec(d.classical.q0), vec(d.classical.p0)};
    }

    QuantumFactor quantum;
    if (d.quantum.kind == "haar") {
        quantum = HaarUniform{cfg.quantum_dim};
    } else if (d.quantum.kind == "point_mixture") {
        PointMixture mix;
        for (const auto& s : d.quantum.states) mix.points.push_back(to_coordinates(s));
        mix.weights = d.quantum.weights;
        quantum = std::move(mix);
    } else {
        const CMatrix base = d.quantum.base;
        const CMatrix slope =
            d.quantum.slope.size() > 0 ? d.quantum.slope : CMatrix(CMatrix::Zero(base.rows(), base.cols()));
        const Eigen::Index axis = d.quantum.slope_axis;
        quantum = QuadraticForm{cfg.quantum_dim, [base, slope, axis](const ClassicalPoint& cp) {
                                    const double s = cp.dof() > axis ? std::tanh(cp.q[axis]) : 0.0;
                                    return HermitianOperator(base + s * slope);
                                }};
    }
    return DensitySpec(std::move(classical), std::move(quantum));
}

std::pair<DensitySpec, std::optional<DensitySpec>> build_densities(const ScenarioConfig& cfg) {
    DensitySpec a = build_density(cfg, cfg.density_a);
    if (cfg.pairing == "same_moment") {
        auto pair = same_moment_pair(QuantumDensityMatrix::maximally_mixed(cfg.quantum_dim), a.classical());
        return {std::move(pair.first), std::move(pair.second)};
    }
    if (cfg.density_b) return {std::move(a), build_density(cfg, *cfg.density_b)};
    return {std::move(a), std::nullopt};
}

bool equivalent(const ScenarioConfig& a, const ScenarioConfig& b, double tol) {
    const auto& ha = a.classical_hamiltonian;
    const auto& hb = b.classical_hamiltonian;
    bool same = a.name == b.name && a.seed == b.seed && a.particles == b.particles &&
                a.quantum_dim == b.quantum_dim && a.classical_dof == b.classical_dof &&
                close(a.hbar, b.hbar, tol) && ha.kind == hb.kind && close(ha.mass, hb.mass, tol) &&
                close(ha.frequency, hb.frequency, tol) &&
                close(ha.q_coefficients, hb.q_coefficients, tol) &&
                close(ha.p_coefficients, hb.p_coefficients, tol) &&
                close(a.quantum_hamiltonian, b.quantum_hamiltonian, tol) &&
                a.interaction.kind == b.interaction.kind &&
                close(a.interaction.coupling, b.interaction.coupling, tol) &&
                a.interaction.axis == b.interaction.axis &&
                close(a.interaction.op, b.interaction.op, tol) && close(a.dt, b.dt, tol) &&
                close(a.horizon, b.horizon, tol) &&
                close(a.observation_times, b.observation_times, tol) &&
                close(a.density_a, b.density_a, tol) &&
                a.density_b.has_value() == b.density_b.has_value() && a.pairing == b.pairing &&
                a.grid.has_value() == b.grid.has_value() &&
                a.output_directory == b.output_directory;
    if (!same) return false;
    if (a.density_b && !close(*a.density_b, *b.density_b, tol)) return false;
    if (a.grid) {
        if (a.grid->size() != b.grid->size()) return false;
        for (std::size_t i = 0; i < a.grid->size(); ++i) {
            const auto& x = (*a.grid)[i];
            const auto& y = (*b.grid)[i];
            if (x.coordinate != y.coordinate || x.index != y.index || x.bins != y.bins ||
                !close(x.lower, y.lower, tol) || !close(x.upper, y.upper, tol)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace hqc::harness

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

#include "hybridqc/harness/results.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace hqc::harness {

namespace {

using nlohmann::json;

json matrix_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

json check_json(const OperatorCheck& c) {
    return {{"min_eigenvalue", c.min_eigenvalue},
            {"trace_error", c.trace_error},
            {"hermiticity", c.hermiticity}};
}

json observation_json(const ObservationRecord& o) {
    json j{{"time", o.time},
           {"rho", matrix_json(o.rho)},
           {"rho_check", check_json(o.rho_check)},
           {"error_band", o.error_band},
           {"energy_drift", o.energy_drift},
           {"norm_drift", o.norm_drift},
           {"steps", o.steps},
           {"estimator_identity", o.estimator_identity},
           {"worst_cell_check", o.worst_cell_check},
           {"remainder_count", o.remainder_count},
           {"captured_weight", o.captured_weight}};
    if (o.rho_b) j["rho_b"] = matrix_json(*o.rho_b);
    if (o.rho_b_check) j["rho_b_check"] = check_json(*o.rho_b_check);
    if (o.trace_distance) j["trace_distance"] = *o.trace_distance;
    if (o.reference) j["reference"] = matrix_json(*o.reference);
    if (!o.cells.empty()) {
        json cells = json::array();
        for (const auto& c : o.cells) {
            cells.push_back({{"index", c.index},
                             {"center", c.center},
                             {"lower", c.lower},
                             {"upper", c.upper},
                             {"count", c.count},
                             {"mass", c.mass},
                             {"matrix", matrix_json(c.matrix)}});
        }
        j["cells"] = std::move(cells);
    }
    return j;
}

std::ofstream open_output(const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + file.string());
    return out;
}

}  // namespace

OperatorCheck check_operator(const CMatrix& m, double expected_trace) {
    OperatorCheck c;
    c.hermiticity = hermiticity_deviation(m);
    const CMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
    c.min_eigenvalue = solver.eigenvalues().minCoeff();
    c.trace_error = std::abs(m.trace().real() - expected_trace);
    return c;
}

std::string result_json(const ResultRecord& record) {
    json observations = json::array();
    for (const auto& o : record.observations) observations.push_back(observation_json(o));
    json root{{"format", "hybridqc-result/1"},
              {"verb", record.verb},
              {"scenario", json::parse(config_json(record.scenario))},
              {"reference_kind", record.reference_kind},
              {"observations", std::move(observations)}};
    if (record.initial_distance) root["initial_distance"] = *record.initial_distance;
    return root.dump(2) + "\n";
}

std::string timeseries_csv(const ResultRecord& record) {
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    const Eigen::Index d = record.scenario.quantum_dim;
    os << "time";
    auto header = [&](const std::string& prefix) {
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j)
                os << ',' << prefix << '_' << i << j << "_re," << prefix << '_' << i << j << "_im";
    };
    header("rho");
    if (record.verb == "compare") header("rho_b");
    os << ",trace_distance,error_band,energy_drift,norm_drift,estimator_identity\n";
    auto entries = [&](const CMatrix& m) {
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) os << ',' << m(i, j).real() << ',' << m(i, j).imag();
    };
    for (const auto& o : record.observations) {
        os << o.time;
        entries(o.rho);
        if (record.verb == "compare") entries(o.rho_b ? *o.rho_b : CMatrix::Zero(d, d).eval());
        os << ',';
        if (o.trace_distance) os << *o.trace_distance;
        os << ',' << o.error_band << ',' << o.energy_drift << ',' << o.norm_drift << ','
           << o.estimator_identity << '\n';
    }
    return os.str();
}

void write_results(const ResultRecord& record, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    open_output(dir / "result.json") << result_json(record);
    open_output(dir / "timeseries.csv") << timeseries_csv(record);
    std::size_t steps = record.observations.empty() ? 0 : record.observations.back().steps;
    const json timing{{"wall_seconds", record.wall_seconds},
                      {"steps_per_particle", steps},
                      {"particles", record.scenario.particles},
                      {"clouds", record.verb == "compare" ? 2 : 1}};
    open_output(dir / "timing.json") << timing.dump(2) << "\n";
}

void write_cloud_csv(const ParticleCloud& cloud, const std::filesystem::path& file) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream out = open_output(file);
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    const Eigen::Index k = cloud.classical_dof();
    const Eigen::Index d = cloud.quantum_dim();
    out << "weight";
    for (Eigen::Index i = 0; i < k; ++i) out << ",q" << i;
    for (Eigen::Index i = 0; i < k; ++i) out << ",p" << i;
    for (Eigen::Index i = 0; i < d; ++i) out << ",x" << i;
    for (Eigen::Index i = 0; i < d; ++i) out << ",y" << i;
    out << '\n';
    for (const auto& particle : cloud) {
        out << particle.weight;
        const auto& cp = particle.point.classical;
        const auto& qp = particle.point.quantum;
        for (Eigen::Index i = 0; i < k; ++i) out << ',' << cp.q[i];
        for (Eigen::Index i = 0; i < k; ++i) out << ',' << cp.p[i];
        for (Eigen::Index i = 0; i < d; ++i) out << ',' << qp.x()[i];
        for (Eigen::Index i = 0; i < d; ++i) out << ',' << qp.y()[i];
        out << '\n';
    }
}

}  // namespace hqc::harness

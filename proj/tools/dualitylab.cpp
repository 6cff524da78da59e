// Copyright 2026 The DualityLab Authors
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

// Command-line front end: `sweep` runs the simulated experiment and emits
// figure data, `verify` re-checks the duality relations from emitted files,
// `tomo` reconstructs a state from a count-record CSV.
//
// Exit codes: 0 success, 1 relation violation found, 2 input error,
// 3 runtime/pipeline error.

#include "dualitylab/coherence.hpp"
#include "dualitylab/config.hpp"
#include "dualitylab/duality.hpp"
#include "dualitylab/tomo.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;
using dualitylab::ExperimentConfig;
using dualitylab::OutputFormat;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitPipeline = 3;

constexpr const char* kFig2Header =
    "theta,C_ideal,H_ideal,C_sim,C_err,H_sim,H_err,sum,bound";
constexpr const char* kFig3Header =
    "theta,X_ideal,P_ideal,X_sim,X_err,P_sim,P_err,quad_lhs,quad_bound";

/// Nine significant digits, fixed decimal point, no locale surprises.
std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

/// Round through the serialized representation so JSON and CSV agree.
double round9(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

struct FigureRow {
    std::vector<double> values;
};

struct FigureData {
    std::string name;  // "fig2" or "fig3"
    std::vector<std::string> columns;
    std::vector<FigureRow> rows;
};

FigureData fig2_data(const std::vector<dualitylab::duality::SweepRecord>& records) {
    FigureData fig;
    fig.name = "fig2";
    std::stringstream header(kFig2Header);
    for (std::string col; std::getline(header, col, ',');) {
        fig.columns.push_back(col);
    }
    for (const auto& r : records) {
        const auto& sim = *r.simulated;
        fig.rows.push_back(FigureRow{{r.theta_deg, r.ideal.c, r.ideal.h,
                                      sim.c.mean, sim.c.std_dev, sim.h.mean,
                                      sim.h.std_dev, sim.c.mean + sim.h.mean,
                                      r.bounds.entropic_bound}});
    }
    return fig;
}

FigureData fig3_data(const std::vector<dualitylab::duality::SweepRecord>& records) {
    FigureData fig;
    fig.name = "fig3";
    std::stringstream header(kFig3Header);
    for (std::string col; std::getline(header, col, ',');) {
        fig.columns.push_back(col);
    }
    for (const auto& r : records) {
        const auto& sim = *r.simulated;
        const double quad_lhs =
            sim.p.mean * sim.p.mean + sim.x.mean * sim.x.mean;
        fig.rows.push_back(FigureRow{{r.theta_deg, r.ideal.x, r.ideal.p,
                                      sim.x.mean, sim.x.std_dev, sim.p.mean,
                                      sim.p.std_dev, quad_lhs,
                                      r.bounds.quadratic_bound}});
    }
    return fig;
}

void write_figure_csv(const FigureData& fig, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() +
                                 " for writing");
    }
    for (std::size_t c = 0; c < fig.columns.size(); ++c) {
        out << (c ? "," : "") << fig.columns[c];
    }
    out << '\n';
    for (const FigureRow& row : fig.rows) {
        for (std::size_t c = 0; c < row.values.size(); ++c) {
            out << (c ? "," : "") << format_number(row.values[c]);
        }
        out << '\n';
    }
}

void write_figure_json(const FigureData& fig, const fs::path& path) {
    json doc;
    doc["schema_version"] = 1;
    doc["figure"] = fig.name;
    doc["columns"] = fig.columns;
    json rows = json::array();
    for (const FigureRow& row : fig.rows) {
        json r = json::array();
        for (double v : row.values) {
            r.push_back(round9(v));
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() +
                                 " for writing");
    }
    out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// sweep

int run_sweep(const ExperimentConfig& config, const std::string& out_dir,
              bool dump_counts) {
    const auto errors = config.validate();
    if (!errors.empty()) {
        for (const std::string& e : errors) {
            std::cerr << "error: " << e << '\n';
        }
        return kExitInput;
    }
    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        std::cerr << "error: cannot create output directory " << dir << ": "
                  << ec.message() << '\n';
        return kExitInput;
    }

    std::vector<dualitylab::duality::SweepRecord> records;
    try {
        records = dualitylab::duality::simulated_sweep(config);
    } catch (const std::exception& e) {
        std::cerr << "pipeline error: " << e.what() << '\n';
        return kExitPipeline;
    }

    const std::string ext =
        config.output_format == OutputFormat::Json ? ".json" : ".csv";
    const fs::path fig2_path = dir / ("fig2" + ext);
    const fs::path fig3_path = dir / ("fig3" + ext);
    try {
        if (config.output_format == OutputFormat::Json) {
            write_figure_json(fig2_data(records), fig2_path);
            write_figure_json(fig3_data(records), fig3_path);
        } else {
            write_figure_csv(fig2_data(records), fig2_path);
            write_figure_csv(fig3_data(records), fig3_path);
        }
        if (dump_counts && config.n_paths == 2) {
            for (std::size_t t = 0; t < records.size(); ++t) {
                const auto wave_records =
                    dualitylab::duality::simulated_wave_records(config, t);
                std::ofstream out(dir / ("counts_theta_" + std::to_string(t) +
                                         ".csv"),
                                  std::ios::binary);
                out << dualitylab::tomo::records_to_csv(wave_records);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "pipeline error: " << e.what() << '\n';
        return kExitPipeline;
    }

    bool all_ok = true;
    for (const auto& r : records) {
        using dualitylab::duality::verify_entropic;
        using dualitylab::duality::verify_gy;
        using dualitylab::duality::verify_quadratic;
        const auto quad = verify_quadratic(r);
        const auto ent = verify_entropic(r);
        std::printf("theta %7.3f  quadratic %s (lhs %.6f bound %.6f)  "
                    "entropic %s (lhs %.6f bound %.6f)",
                    r.theta_deg, quad.satisfied ? "ok " : "VIOLATED",
                    quad.lhs, quad.bound, ent.satisfied ? "ok " : "VIOLATED",
                    ent.lhs, ent.bound);
        all_ok = all_ok && quad.satisfied && ent.satisfied;
        if (r.n_paths == 2) {
            const auto gy = verify_gy(r);
            std::printf("  gy %s (lhs %.6f)", gy.satisfied ? "ok " : "VIOLATED",
                        gy.lhs);
            all_ok = all_ok && gy.satisfied;
        }
        std::printf("\n");
    }
    std::printf("wrote %s and %s\n", fig2_path.string().c_str(),
                fig3_path.string().c_str());
    if (!all_ok) {
        std::printf("one or more duality relations violated\n");
        return kExitViolation;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct ParsedFigure {
    std::string header;
    std::vector<std::vector<double>> rows;
    std::vector<int> line_numbers;
};

ParsedFigure parse_figure_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    ParsedFigure fig;
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) {
        throw std::runtime_error(path.string() + " line 1: empty file");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != kFig2Header && line != kFig3Header) {
        throw std::runtime_error(path.string() +
                                 " line 1: unrecognized header '" + line + "'");
    }
    fig.header = line;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::vector<double> values;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            try {
                std::size_t pos = 0;
                values.push_back(std::stod(field, &pos));
                if (pos != field.size()) {
                    throw std::invalid_argument("trailing characters");
                }
            } catch (const std::exception&) {
                std::ostringstream os;
                os << path.string() << " line " << line_no
                   << ": not a number: '" << field << "'";
                throw std::runtime_error(os.str());
            }
        }
        if (values.size() != 9) {
            std::ostringstream os;
            os << path.string() << " line " << line_no << ": expected 9 "
               << "fields, found " << values.size();
            throw std::runtime_error(os.str());
        }
        fig.rows.push_back(std::move(values));
        fig.line_numbers.push_back(line_no);
    }
    if (fig.rows.empty()) {
        throw std::runtime_error(path.string() + ": no data rows");
    }
    return fig;
}

int run_verify(const std::string& file) {
    ParsedFigure fig;
    try {
        fig = parse_figure_csv(file);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    // 9-significant-digit serialization perturbs each value by up to ~5e-10
    // relative; squared-and-summed terms can accumulate a few 1e-9.
    constexpr double kIdealTol = 1e-8;
    bool all_ok = true;
    auto report = [&](double theta, const char* what, double lhs, double bound,
                      bool ok) {
        std::printf("theta %7.3f  %-18s lhs %.9g  bound %.9g  %s\n", theta,
                    what, lhs, bound, ok ? "ok" : "VIOLATED");
        all_ok = all_ok && ok;
    };
    if (fig.header == kFig2Header) {
        for (const auto& row : fig.rows) {
            const double theta = row[0];
            const double ideal_lhs = row[1] + row[2];
            const double sim_lhs = row[7];
            const double bound = row[8];
            const double sigma = std::hypot(row[4], row[6]);
            report(theta, "entropic (ideal)", ideal_lhs, bound,
                   ideal_lhs <= bound + kIdealTol);
            report(theta, "entropic (sim)", sim_lhs, bound,
                   sim_lhs <= bound + 3.0 * sigma);
        }
    } else {
        for (const auto& row : fig.rows) {
            const double theta = row[0];
            const double x_ideal = row[1];
            const double p_ideal = row[2];
            const double x_sim = row[3];
            const double x_err = row[4];
            const double p_sim = row[5];
            const double p_err = row[6];
            const double quad_lhs = row[7];
            const double bound = row[8];
            const double ideal_lhs = x_ideal * x_ideal + p_ideal * p_ideal;
            const double sigma = std::hypot(2.0 * std::abs(x_sim) * x_err,
                                            2.0 * std::abs(p_sim) * p_err);
            report(theta, "quadratic (ideal)", ideal_lhs, bound,
                   ideal_lhs <= bound + kIdealTol);
            report(theta, "quadratic (sim)", quad_lhs, bound,
                   quad_lhs <= bound + 3.0 * sigma);
            if (std::abs(bound - 0.25) < 1e-12) {
                // Two paths: the visibility relation V^2 + D^2 <= 1 with
                // V = 2X and D = 2P.
                report(theta, "gy (ideal)", 4.0 * ideal_lhs, 1.0,
                       4.0 * ideal_lhs <= 1.0 + kIdealTol);
                report(theta, "gy (sim)", 4.0 * quad_lhs, 1.0,
                       4.0 * quad_lhs <= 1.0 + 12.0 * sigma);
            }
        }
    }
    if (!all_ok) {
        std::printf("verdict: VIOLATIONS FOUND\n");
        return kExitViolation;
    }
    std::printf("verdict: all %zu rows satisfied\n", fig.rows.size());
    return kExitOk;
}

// ---------------------------------------------------------------------------
// tomo

json mc_to_json(const dualitylab::tomo::McEstimate& e) {
    return json{{"mean", round9(e.mean)},
                {"std_dev", round9(e.std_dev)},
                {"samples", e.samples}};
}

json matrix_to_json(const dualitylab::qmath::ComplexMatrix& m) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json re_row = json::array();
        json im_row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            re_row.push_back(round9(m(i, j).real()));
            im_row.push_back(round9(m(i, j).imag()));
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

int run_tomo(const std::string& file, int mc_samples, std::uint64_t seed) {
    std::vector<dualitylab::tomo::CountRecord> records;
    try {
        std::ifstream in(file, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot open " << file << '\n';
            return kExitInput;
        }
        records = dualitylab::tomo::records_from_csv(in);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }

    std::set<int> branches;
    for (const auto& r : records) {
        branches.insert(r.branch);
    }
    const bool two_branch = branches.size() == 2;

    using Records = std::vector<dualitylab::tomo::CountRecord>;
    auto reconstruct =
        [two_branch, &branches](
            const Records& recs) -> dualitylab::tomo::TwoBranchResult {
        if (two_branch) {
            Records b1;
            Records b2;
            const int first = *branches.begin();
            for (const auto& r : recs) {
                (r.branch == first ? b1 : b2).push_back(r);
            }
            return dualitylab::tomo::weighted_two_branch_reconstruct(b1, b2);
        }
        dualitylab::tomo::TomoResult fit =
            dualitylab::tomo::mle_reconstruct(recs);
        dualitylab::tomo::TwoBranchResult out{fit.rho_hat,
                                              {1.0, 0.0},
                                              {false, true},
                                              {}};
        out.branches[0] = std::move(fit);
        return out;
    };

    try {
        const auto result = reconstruct(records);
        const auto rep = dualitylab::coherence::coherence_report(
            result.rho, result.rho.dim());
        auto pipeline = [&](const Records& recs) {
            const auto res = reconstruct(recs);
            const auto rr = dualitylab::coherence::coherence_report(
                res.rho, res.rho.dim());
            return std::vector<double>{rr.c_relent, rr.c_l1, rr.x};
        };
        const auto mc = dualitylab::tomo::monte_carlo_errors(
            pipeline, records, mc_samples, seed);

        json doc;
        doc["schema_version"] = 1;
        doc["source"] = two_branch ? "two-branch" : "single";
        if (two_branch) {
            doc["weights"] = {round9(result.weights[0]),
                              round9(result.weights[1])};
        }
        doc["rho"] = matrix_to_json(result.rho.matrix());
        doc["coherence"] = {{"c_relent", round9(rep.c_relent)},
                            {"c_l1", round9(rep.c_l1)},
                            {"x", round9(rep.x)},
                            {"n_paths", rep.n_paths}};
        doc["mc"] = {{"c_relent", mc_to_json(mc[0])},
                     {"c_l1", mc_to_json(mc[1])},
                     {"x", mc_to_json(mc[2])}};
        std::cout << doc.dump(2) << '\n';
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        // informationally incomplete settings, inconsistent records
        std::cerr << "error: " << e.what() << '\n';
        return kExitPipeline;
    } catch (const std::exception& e) {
        std::cerr << "pipeline error: " << e.what() << '\n';
        return kExitPipeline;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-path which-way laboratory: coherence-based "
                 "wave-particle duality sweeps, verification, and tomography"};
    app.require_subcommand(1);

    ExperimentConfig config;
    std::string out_dir = ".";
    std::string format = "csv";
    bool dump_counts = false;

    app.set_config("--config", "",
                   "configuration file (INI format; sweep options live in a "
                   "[sweep] section)")
        ->envname("DUALITYLAB_CONFIG");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "run the simulated sweep and emit figure data");
    sweep->fallthrough();
    sweep->add_option("--theta-start", config.theta_start_deg,
                      "first detector angle, degrees")
        ->capture_default_str();
    sweep->add_option("--theta-end", config.theta_end_deg,
                      "last detector angle, degrees")
        ->capture_default_str();
    sweep->add_option("--theta-steps", config.theta_steps, "grid points")
        ->capture_default_str();
    sweep->add_option("--flux", config.flux, "photon counts per second")
        ->capture_default_str();
    sweep->add_option("--exposure", config.exposure_s,
                      "seconds per measurement setting")
        ->capture_default_str();
    sweep->add_option("--mc-samples", config.mc_samples,
                      "Monte Carlo bootstrap samples per point")
        ->capture_default_str();
    sweep->add_option("--seed", config.seed, "random seed")
        ->capture_default_str();
    sweep->add_option("--n-paths", config.n_paths, "number of paths")
        ->capture_default_str();
    sweep->add_option("--format", format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sweep->add_option("--out-dir", out_dir, "output directory")
        ->capture_default_str();
    sweep->add_option("--threads", config.threads,
                      "worker threads (0 = hardware)")
        ->capture_default_str();
    sweep->add_flag("--dump-counts", dump_counts,
                    "also write per-angle wave count records");

    std::string verify_file;
    CLI::App* verify = app.add_subcommand(
        "verify", "re-check duality relations from an emitted figure file");
    verify->fallthrough();
    verify->add_option("file", verify_file, "fig2/fig3 CSV file")->required();

    std::string tomo_file;
    int tomo_mc_samples = 100;
    std::uint64_t tomo_seed = 1;
    CLI::App* tomo = app.add_subcommand(
        "tomo", "reconstruct a state from a count-record CSV");
    tomo->fallthrough();
    tomo->add_option("file", tomo_file, "count-record CSV file")->required();
    tomo->add_option("--mc-samples", tomo_mc_samples,
                     "Monte Carlo bootstrap samples")
        ->capture_default_str();
    tomo->add_option("--seed", tomo_seed, "random seed")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    config.output_format =
        format == "json" ? OutputFormat::Json : OutputFormat::Csv;

    if (sweep->parsed()) {
        return run_sweep(config, out_dir, dump_counts);
    }
    if (verify->parsed()) {
        return run_verify(verify_file);
    }
    return run_tomo(tomo_file, tomo_mc_samples, tomo_seed);
}

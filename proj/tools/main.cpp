// l2dict command-line front end: moment estimation, dictionary synthesis,
// verification, cost evaluation, representation and control-design ranking.
//
// Exit codes: 0 ok, 1 verification failed, 2 I/O or parse failure,
// 3 violated precondition.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "l2dict/control.hpp"
#include "l2dict/dictionary.hpp"
#include "l2dict/frames.hpp"
#include "l2dict/io.hpp"
#include "l2dict/linalg.hpp"

namespace {

using namespace l2dict;

struct RunConfig {
  std::string input;
  std::string moment;
  std::string dict;
  std::string out;
  std::string format = "json";
  int dict_size = 0;
  std::uint64_t seed = 0;
  long samples = 1000000;
  bool example_sampler = false;
};

std::string significant6(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%#.6g", x);
  return buf;
}

void emit(const RunConfig& cfg, const std::string& content) {
  if (!cfg.out.empty()) write_text_file(cfg.out, content);
}

std::vector<Vec> load_samples(const RunConfig& cfg) {
  if (cfg.example_sampler) {
    if (cfg.samples < 1) fail(errc::invalid_input, "--samples must be positive");
    return example_density_samples(static_cast<std::size_t>(cfg.samples), cfg.seed);
  }
  if (cfg.input.empty()) fail(errc::parse_error, "need --input samples or --example-sampler");
  Matrix rows = read_matrix_file(cfg.input);
  std::vector<Vec> samples(rows.rows());
  for (int i = 0; i < rows.rows(); ++i) {
    samples[i].resize(rows.cols());
    for (int j = 0; j < rows.cols(); ++j) samples[i][j] = rows(i, j);
  }
  return samples;
}

Scheme scheme_from_artifact(const SynthesisArtifact& artifact) {
  const SymMatrix moment_of_dict(artifact.gram);
  Matrix basis = moment_of_dict.numeric_rank() == artifact.dim ? Matrix::identity(artifact.dim)
                                                               : range_basis(moment_of_dict);
  Dictionary dict{artifact.count, artifact.dictionary, std::move(basis)};
  return {std::move(dict), artifact.pinv};
}

int cmd_estimate(const RunConfig& cfg) {
  MomentSpec spec = estimate_moment(load_samples(cfg));
  const std::string body = write_matrix(spec.sigma_v.entries(), parse_format(cfg.format));
  emit(cfg, body);
  if (cfg.out.empty()) std::cout << body;
  return 0;
}

int cmd_synthesize(const RunConfig& cfg) {
  if (cfg.moment.empty()) fail(errc::parse_error, "need --moment");
  MomentSpec spec{SymMatrix(read_matrix_file(cfg.moment))};
  OptimalSolution solution = synthesize_general(spec, cfg.dict_size);
  emit(cfg, write_artifact(artifact_from_solution(solution), parse_format(cfg.format)));
  std::cout << significant6(solution.optimal_value) << "\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  if (cfg.dict.empty()) fail(errc::parse_error, "need --dict");
  SynthesisArtifact artifact = read_artifact_file(cfg.dict);
  std::vector<std::string> failures;

  for (int j = 0; j < artifact.count; ++j) {
    const double len = norm(artifact.dictionary.column(j));
    if (std::abs(len - 1.0) > 1e-8)
      failures.push_back("unit-norm violation at index " + std::to_string(j) + ": " + format_double(len));
  }

  Matrix realized = artifact.dictionary.multiply_transposed(artifact.dictionary);
  if (!cfg.moment.empty()) {
    MomentSpec spec{SymMatrix(read_matrix_file(cfg.moment))};
    if (spec.ambient_dim != artifact.dim) {
      failures.push_back("moment dimension does not match the dictionary");
    } else {
      Matrix expected;
      if (spec.support_rank == spec.ambient_dim) {
        expected = optimal_gram_full_rank(spec, artifact.count).entries();
      } else {
        GramGeneral gg = optimal_gram_general(spec, artifact.count);
        expected = gg.basis.multiply(gg.h_star.entries()).multiply(gg.basis.transposed());
      }
      const double gap = (realized - expected).frobenius_norm();
      if (gap > 1e-8 * artifact.count)
        failures.push_back("gram reconstruction off by " + format_double(gap));

      // Isotropic moment: the dictionary must be a K/n unit-norm tight frame.
      Matrix iso = spec.sigma_v.entries();
      const double mean_diag = iso.trace() / spec.ambient_dim;
      for (int i = 0; i < iso.rows(); ++i) iso(i, i) -= mean_diag;
      if (iso.frobenius_norm() <= 1e-8 * std::max(1.0, std::abs(mean_diag))) {
        FrameReport report = analyze_frame(artifact.dictionary.columns());
        if (report.untf_constant) {
          std::cout << "UNTF constant " << significant6(*report.untf_constant) << "\n";
        } else {
          failures.push_back("isotropic moment but the dictionary is not a unit-norm tight frame");
        }
      }
    }
  }

  if (failures.empty()) {
    std::cout << "verify: all checks passed\n";
    return 0;
  }
  for (const std::string& f : failures) std::cout << "verify: " << f << "\n";
  return 1;
}

int cmd_cost(const RunConfig& cfg) {
  if (!cfg.dict.empty()) {  // empirical cost of a stored scheme over samples
    Scheme scheme = scheme_from_artifact(read_artifact_file(cfg.dict));
    const double cost = empirical_cost(scheme, load_samples(cfg));
    std::cout << significant6(cost) << "\n";
    emit(cfg, format_double(cost) + "\n");
    return 0;
  }
  if (cfg.moment.empty() || cfg.input.empty())
    fail(errc::parse_error, "need either --dict with samples, or --moment with --input surrogate");
  MomentSpec spec{SymMatrix(read_matrix_file(cfg.moment))};
  const SymMatrix surrogate(read_matrix_file(cfg.input));
  const double cost = representation_cost(spec, surrogate, cfg.dict_size);
  std::cout << significant6(cost) << "\n";
  emit(cfg, format_double(cost) + "\n");
  return 0;
}

int cmd_represent(const RunConfig& cfg) {
  if (cfg.dict.empty() || cfg.input.empty()) fail(errc::parse_error, "need --dict and --input");
  Scheme scheme = scheme_from_artifact(read_artifact_file(cfg.dict));
  Matrix vectors = read_matrix_file(cfg.input);  // one sample per row
  Matrix coefficients(vectors.rows(), scheme.dictionary.size);
  for (int i = 0; i < vectors.rows(); ++i) {
    Vec v(vectors.cols());
    for (int j = 0; j < vectors.cols(); ++j) v[j] = vectors(i, j);
    Vec alpha = represent(scheme, v);
    for (int j = 0; j < static_cast<int>(alpha.size()); ++j) coefficients(i, j) = alpha[j];
  }
  const std::string body = write_matrix(coefficients, parse_format(cfg.format));
  emit(cfg, body);
  if (cfg.out.empty()) std::cout << body;
  return 0;
}

int cmd_control_rank(const RunConfig& cfg) {
  if (cfg.input.empty() || cfg.moment.empty()) fail(errc::parse_error, "need --input systems and --moment");
  std::vector<LtiSystem> systems = read_systems_file(cfg.input);
  const SymMatrix sigma(read_matrix_file(cfg.moment));
  std::vector<RankedDesign> ranking = rank_designs(systems, sigma);
  for (size_t i = 0; i < ranking.size(); ++i) {
    std::cout << (i + 1) << ". " << ranking[i].id;
    if (ranking[i].cost)
      std::cout << " cost=" << significant6(*ranking[i].cost);
    else
      std::cout << " uncontrollable";
    std::cout << "\n";
  }
  emit(cfg, write_ranking(ranking, parse_format(cfg.format)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"l2-optimal dictionary toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "input file (samples, surrogate, vectors or systems)");
    sub->add_option("--moment", cfg.moment, "second-moment matrix file (CSV or JSON)");
    sub->add_option("--dict", cfg.dict, "synthesis artifact file");
    sub->add_option("-K,--size", cfg.dict_size, "dictionary size");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--samples", cfg.samples, "sample count for the built-in sampler");
    sub->add_option("--out", cfg.out, "output path");
    sub->add_option("--format", cfg.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--example-sampler", cfg.example_sampler,
                  "draw samples from the built-in triangular product density");
  };

  CLI::App* estimate = app.add_subcommand("estimate", "estimate a second moment from samples");
  CLI::App* synthesize = app.add_subcommand("synthesize", "compute an l2-optimal dictionary");
  CLI::App* verify = app.add_subcommand("verify", "check a synthesis artifact");
  CLI::App* cost = app.add_subcommand("cost", "evaluate representation cost");
  CLI::App* represent_cmd = app.add_subcommand("represent", "compute representation coefficients");
  CLI::App* control_rank = app.add_subcommand("control-rank", "rank control systems by transfer cost");
  for (CLI::App* sub : {estimate, synthesize, verify, cost, represent_cmd, control_rank}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    if (estimate->parsed()) return cmd_estimate(cfg);
    if (synthesize->parsed()) return cmd_synthesize(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (cost->parsed()) return cmd_cost(cfg);
    if (represent_cmd->parsed()) return cmd_represent(cfg);
    if (control_rank->parsed()) return cmd_control_rank(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == errc::parse_error ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

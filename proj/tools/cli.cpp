/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "csv.hpp"
#include "qmlkit/bayes.hpp"
#include "qmlkit/error.hpp"
#include "qmlkit/gradients.hpp"
#include "qmlkit/kernels.hpp"
#include "qmlkit/model_io.hpp"
#include "qmlkit/models.hpp"
#include "qmlkit/random.hpp"
#include "qmlkit/serialization.hpp"

namespace qmlkit::cli {

namespace {

using json = nlohmann::ordered_json;

/// A failure that maps to exit code 3 without being a library error.
class DomainFailure : public std::runtime_error {
public:
  DomainFailure(std::string kind, const std::string &what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string &kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

// --- shared options ---------------------------------------------------------

struct ExecOptions {
  std::size_t shots = 0;
  std::uint64_t seed = 0;

  Execution exec() const {
    return shots == 0 ? Execution::exact_mode() : Execution::sampled(shots, seed);
  }
};

void add_exec_options(CLI::App *cmd, ExecOptions &o) {
  cmd->add_option("--shots", o.shots, "Shots per primitive call; 0 or absent means exact");
  cmd->add_option("--seed", o.seed, "Seed for every stochastic step")->capture_default_str();
}

struct FeatureMapOptions {
  std::optional<std::string> kind;
  std::size_t reps = 2;
};

// The ZZ map with two repetitions sends the two blob centres to the same
// state, so kernel models default to the plain angle encoding.
Circuit build_feature_map(const FeatureMapOptions &o, std::size_t dim,
                          const std::string &fallback) {
  const std::string kind = o.kind.value_or(fallback);
  if (kind == "zz") {
    return zz_feature_map(dim, o.reps);
  }
  if (kind == "angle") {
    return angle_feature_map(dim);
  }
  throw ValidationError("unknown feature map '" + kind + "' (expected zz or angle)");
}

void add_feature_map_options(CLI::App *cmd, FeatureMapOptions &o) {
  cmd->add_option("--feature-map", o.kind,
                  "Feature map: zz or angle (default zz for vqc/vqr, angle otherwise)");
  cmd->add_option("--reps", o.reps, "ZZ feature map repetitions")->capture_default_str();
}

Table read_table(const std::string &path) { return parse_table(read_text_file(path), path); }

std::string join_csv(const std::vector<std::string> &cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    line += (i ? "," : "") + cells[i];
  }
  return line + "\n";
}

std::optional<double> try_number(const std::string &s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return v;
}

/// The two distinct labels in sorted order (numeric when every label is a number).
LabelMap derive_label_map(const std::vector<std::string> &labels) {
  const bool numeric = std::all_of(labels.begin(), labels.end(),
                                   [](const std::string &s) { return try_number(s).has_value(); });
  std::vector<std::string> distinct(labels.begin(), labels.end());
  std::sort(distinct.begin(), distinct.end(), [&](const std::string &a, const std::string &b) {
    return numeric ? *try_number(a) < *try_number(b) : a < b;
  });
  distinct.erase(std::unique(distinct.begin(), distinct.end(),
                             [&](const std::string &a, const std::string &b) {
                               return numeric ? *try_number(a) == *try_number(b) : a == b;
                             }),
                 distinct.end());
  if (distinct.size() != 2) {
    throw ValidationError("classifiers need exactly two distinct labels, got " +
                          std::to_string(distinct.size()));
  }
  return {distinct[0], distinct[1]};
}

double encode_label(const LabelMap &map, const std::string &label) {
  const auto same = [&](const std::string &known) {
    const auto a = try_number(label), b = try_number(known);
    return a && b ? *a == *b : label == known;
  };
  if (same(map.negative)) {
    return -1.0;
  }
  if (same(map.positive)) {
    return 1.0;
  }
  throw ValidationError("label '" + label + "' is not one of the model's labels '" + map.negative +
                        "', '" + map.positive + "'");
}

std::string decode_label(const std::optional<LabelMap> &map, int label) {
  if (!map) {
    return label > 0 ? "1" : "-1";
  }
  return label > 0 ? map->positive : map->negative;
}

std::vector<double> numeric_labels(const std::vector<std::string> &labels) {
  std::vector<double> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto v = try_number(labels[i]);
    if (!v) {
      throw ValidationError("row " + std::to_string(i + 1) + ": regression label '" + labels[i] +
                            "' is not a number");
    }
    out.push_back(*v);
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// --- optimizer config -------------------------------------------------------

double number_at(const nlohmann::json &j, const std::string &path) {
  if (!j.is_number()) {
    throw SchemaError(path, "expected a number");
  }
  return j.get<double>();
}

std::size_t count_at(const nlohmann::json &j, const std::string &path) {
  if (!j.is_number_unsigned()) {
    throw SchemaError(path, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

void apply_optimizer_json(const nlohmann::json &j, OptimizerConfig &c, const std::string &path) {
  if (!j.is_object()) {
    throw SchemaError(path, "expected an object");
  }
  for (const auto &[key, value] : j.items()) {
    const std::string p = path + "." + key;
    if (key == "kind") {
      const auto kind =
          value.is_string() ? optimizer_kind_from_string(value.get<std::string>()) : std::nullopt;
      if (!kind) {
        throw SchemaError(p, "expected \"gd\", \"adam\" or \"spsa\"");
      }
      c.kind = *kind;
    } else if (key == "max_iterations") {
      c.max_iterations = count_at(value, p);
    } else if (key == "learning_rate") {
      c.learning_rate = number_at(value, p);
    } else if (key == "adam_beta1") {
      c.adam_beta1 = number_at(value, p);
    } else if (key == "adam_beta2") {
      c.adam_beta2 = number_at(value, p);
    } else if (key == "adam_epsilon") {
      c.adam_epsilon = number_at(value, p);
    } else if (key == "spsa_a") {
      c.spsa_a = number_at(value, p);
    } else if (key == "spsa_c") {
      c.spsa_c = number_at(value, p);
    } else if (key == "spsa_A") {
      c.spsa_A = number_at(value, p);
    } else if (key == "spsa_alpha") {
      c.spsa_alpha = number_at(value, p);
    } else if (key == "spsa_gamma") {
      c.spsa_gamma = number_at(value, p);
    } else if (key == "spsa_resamples") {
      c.spsa_resamples = count_at(value, p);
    } else if (key == "spsa_target_step") {
      c.spsa_target_step = number_at(value, p);
    } else if (key == "spsa_calibration_steps") {
      c.spsa_calibration_steps = count_at(value, p);
    } else if (key == "fd_step") {
      c.fd_step = number_at(value, p);
    } else if (key == "tolerance") {
      c.tolerance = number_at(value, p);
    } else {
      throw SchemaError(p, "unknown optimizer setting");
    }
  }
  try {
    c.validate();
  } catch (const SchemaError &) {
    throw;
  } catch (const ValidationError &e) {
    throw SchemaError(path, e.what());
  }
}

// --- gen-data ---------------------------------------------------------------

struct GenDataOptions {
  std::string kind = "blobs";
  std::size_t samples = 20;
  double noise = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

void gen_data(const GenDataOptions &o) {
  if (o.samples < 2 || o.samples % 2 != 0) {
    throw ValidationError("--samples must be an even number >= 2");
  }
  if (!(o.noise >= 0.0) || !std::isfinite(o.noise)) {
    throw ValidationError("--noise must be a finite non-negative number");
  }
  constexpr double pi = std::numbers::pi;
  Rng rng(o.seed);
  std::string text = "f0,f1,label\n";
  for (std::size_t i = 0; i < o.samples; ++i) {
    double cx = 0.0, cy = 0.0;
    int label = 0;
    if (o.kind == "blobs") {
      label = i % 2 == 0 ? 1 : -1;
      cx = cy = label * pi / 4;
    } else if (o.kind == "xor") {
      static constexpr int kCorners[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
      const auto &c = kCorners[i % 4];
      cx = c[0] * pi / 2;
      cy = c[1] * pi / 2;
      label = c[0] * c[1];
    } else {
      throw ValidationError("unknown dataset kind '" + o.kind + "' (expected blobs or xor)");
    }
    const double x = o.noise > 0.0 ? cx + o.noise * rng.normal() : cx;
    const double y = o.noise > 0.0 ? cy + o.noise * rng.normal() : cy;
    text += join_csv({format_double(x), format_double(y), std::to_string(label)});
  }
  write_text_file(o.out, text);
}

// --- train ------------------------------------------------------------------

struct TrainOptions {
  std::string model = "qsvc";
  std::string data;
  std::string out;
  std::string config;
  FeatureMapOptions feature_map;
  std::size_t ansatz_reps = 2;
  std::size_t best_of = 1;
  std::optional<std::size_t> max_iterations;
  double C = 1.0;
  double lambda = 0.01;
  std::size_t steps = 1000;
  ExecOptions exec;
};

double mean_hinge(const std::vector<double> &decision, const std::vector<double> &labels) {
  double total = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    total += std::max(0.0, 1.0 - labels[i] * decision[i]);
  }
  return total / static_cast<double>(labels.size());
}

double accuracy(const std::vector<int> &predicted, const std::vector<double> &labels) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    hits += predicted[i] == static_cast<int>(labels[i]) ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(labels.size());
}

double mse(const std::vector<double> &predicted, const std::vector<double> &labels) {
  double total = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    total += (predicted[i] - labels[i]) * (predicted[i] - labels[i]);
  }
  return total / static_cast<double>(labels.size());
}

double best_loss(const std::vector<double> &history) {
  return *std::min_element(history.begin(), history.end());
}

/// Seed of the k-th of several fits sharing one user seed.
std::uint64_t run_seed(std::uint64_t seed, std::size_t k) { return Rng::derive(seed, k).next(); }

void train(TrainOptions o, std::ostream &out) {
  const auto start = std::chrono::steady_clock::now();
  OptimizerConfig opt = default_variational_config();
  if (!o.config.empty()) {
    const auto cfg = parse_json(read_text_file(o.config));
    if (!cfg.is_object()) {
      throw SchemaError("$", "expected an object");
    }
    if (cfg.contains("format_version") && cfg["format_version"] != 1) {
      throw SchemaError("$.format_version", "unsupported format version");
    }
    if (cfg.contains("optimizer")) {
      apply_optimizer_json(cfg["optimizer"], opt, "$.optimizer");
    }
  }
  if (o.max_iterations) {
    opt.max_iterations = *o.max_iterations;
  }
  if (o.best_of < 1) {
    throw ValidationError("--best-of must be at least 1");
  }

  const Table table = read_table(o.data);
  if (!table.labels) {
    throw ValidationError(o.data + ": missing column 'label'");
  }
  const Execution exec = o.exec.exec();
  const std::size_t dim = table.features.cols();
  const bool variational = o.model == "vqc" || o.model == "vqr";
  const Circuit fm = build_feature_map(o.feature_map, dim, variational ? "zz" : "angle");

  json metrics;
  SavedModel saved{SvmModel{}, std::nullopt};
  std::optional<std::string> failure;

  if (o.model == "vqr") {
    const Dataset data{table.features, numeric_labels(*table.labels)};
    const Circuit ansatz = real_amplitudes(dim, o.ansatz_reps);
    std::optional<VqrModel> best;
    for (std::size_t k = 0; k < o.best_of; ++k) {
      auto m = vqr_fit(data, fm, ansatz, default_regression_observable(dim), opt,
                       run_seed(o.exec.seed, k), exec);
      if (!best || best_loss(m.loss_history) < best_loss(best->loss_history)) {
        best = std::move(m);
      }
    }
    metrics["train_mse"] = mse(vqr_predict(*best, data.features, exec), data.labels);
    metrics["iterations"] = best->loss_history.size() - 1;
    metrics["final_loss"] = best_loss(best->loss_history);
    saved.model = std::move(*best);
  } else {
    const LabelMap labels = derive_label_map(*table.labels);
    std::vector<double> y;
    for (const auto &l : *table.labels) {
      y.push_back(encode_label(labels, l));
    }
    const Dataset data{table.features, std::move(y)};
    saved.labels = labels;

    if (o.model == "vqc") {
      const Circuit ansatz = real_amplitudes(dim, o.ansatz_reps);
      std::optional<VqcModel> best;
      for (std::size_t k = 0; k < o.best_of; ++k) {
        auto m = vqc_fit(data, fm, ansatz, opt, run_seed(o.exec.seed, k), exec);
        if (!best || best_loss(m.loss_history) < best_loss(best->loss_history)) {
          best = std::move(m);
        }
      }
      metrics["train_accuracy"] =
          accuracy(vqc_predict(*best, data.features, exec).labels, data.labels);
      metrics["iterations"] = best->loss_history.size() - 1;
      metrics["final_loss"] = best_loss(best->loss_history);
      saved.model = std::move(*best);
    } else if (o.model == "qsvc") {
      auto fit = qsvc_fit(data, fm, o.C, exec);
      const auto pred = svm_predict(fit.model, data.features, exec);
      metrics["train_accuracy"] = accuracy(pred.labels, data.labels);
      metrics["iterations"] = fit.solver.iterations;
      metrics["final_loss"] = mean_hinge(pred.decision, data.labels);
      if (!fit.solver.converged) {
        failure = "SMO stopped with KKT violation " + std::to_string(fit.solver.violation) +
                  " after " + std::to_string(fit.solver.iterations) + " iterations";
      }
      saved.model = std::move(fit.model);
    } else if (o.model == "pegasos") {
      auto fit = pegasos_fit(data, fm, o.lambda, o.steps, o.exec.seed, exec);
      const auto pred = svm_predict(fit.model, data.features, exec);
      metrics["train_accuracy"] = accuracy(pred.labels, data.labels);
      metrics["iterations"] = o.steps;
      metrics["final_loss"] = mean_hinge(pred.decision, data.labels);
      saved.model = std::move(fit.model);
    } else {
      throw ValidationError("unknown model '" + o.model + "' (expected vqc, vqr, qsvc or pegasos)");
    }
  }

  save_model(saved, o.out);
  metrics["wall_seconds"] = seconds_since(start);
  out << metrics.dump() << "\n";
  if (failure) {
    throw DomainFailure("non_convergence", *failure);
  }
}

// --- predict ----------------------------------------------------------------

struct PredictOptions {
  std::string model;
  std::string data;
  std::string out;
  ExecOptions exec;
};

void predict(const PredictOptions &o, std::ostream &out) {
  const SavedModel saved = load_model(o.model);
  const Table table = read_table(o.data);
  const Execution exec = o.exec.exec();
  std::string csv;
  json metrics;

  if (const auto *vqr = std::get_if<VqrModel>(&saved.model)) {
    const auto pred = vqr_predict(*vqr, table.features, exec);
    csv = "prediction\n";
    for (double v : pred) {
      csv += format_double(v) + "\n";
    }
    if (table.labels) {
      metrics["mse"] = mse(pred, numeric_labels(*table.labels));
    }
  } else {
    std::vector<int> labels;
    if (const auto *vqc = std::get_if<VqcModel>(&saved.model)) {
      const auto pred = vqc_predict(*vqc, table.features, exec);
      csv = "prediction,probability\n";
      for (std::size_t i = 0; i < pred.labels.size(); ++i) {
        csv += join_csv({decode_label(saved.labels, pred.labels[i]),
                         format_double(pred.positive_probability[i])});
      }
      labels = pred.labels;
    } else {
      const auto pred = svm_predict(std::get<SvmModel>(saved.model), table.features, exec);
      csv = "prediction,decision\n";
      for (std::size_t i = 0; i < pred.labels.size(); ++i) {
        csv +=
            join_csv({decode_label(saved.labels, pred.labels[i]), format_double(pred.decision[i])});
      }
      labels = pred.labels;
    }
    if (table.labels) {
      const LabelMap map = saved.labels.value_or(LabelMap{"-1", "1"});
      std::vector<double> truth;
      for (const auto &l : *table.labels) {
        truth.push_back(encode_label(map, l));
      }
      metrics["accuracy"] = accuracy(labels, truth);
    }
  }
  write_text_file(o.out, csv);
  metrics["rows"] = table.features.rows();
  out << metrics.dump() << "\n";
}

// --- kernel -----------------------------------------------------------------

struct KernelOptions {
  std::string data;
  std::string out;
  FeatureMapOptions feature_map;
  ExecOptions exec;
};

void kernel(const KernelOptions &o, std::ostream &out) {
  const Table table = read_table(o.data);
  const Circuit fm = build_feature_map(o.feature_map, table.features.cols(), "angle");
  const auto k = kernel_matrix(table.features, fm, o.exec.exec());
  std::vector<std::string> cells;
  for (std::size_t j = 0; j < k.cols(); ++j) {
    cells.push_back(std::to_string(j));
  }
  std::string csv = join_csv(cells);
  for (std::size_t i = 0; i < k.rows(); ++i) {
    cells.clear();
    for (std::size_t j = 0; j < k.cols(); ++j) {
      cells.push_back(format_double(k(i, j)));
    }
    csv += join_csv(cells);
  }
  write_text_file(o.out, csv);
  json summary;
  summary["rows"] = k.rows();
  summary["cols"] = k.cols();
  out << summary.dump() << "\n";
}

// --- gradcheck --------------------------------------------------------------

struct GradcheckOptions {
  std::string circuit;
  std::string observable;
  std::string values;
  double shift = kDefaultShift;
  double step = 1e-5;
  double threshold = 1e-4;
  std::uint64_t seed = 0;
};

std::vector<double> parse_values(const std::string &text) {
  std::vector<double> out;
  std::istringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto v = try_number(cell);
    if (!v || !std::isfinite(*v)) {
      throw ValidationError("--values entry '" + cell + "' is not a finite number");
    }
    out.push_back(*v);
  }
  return out;
}

bool gradcheck(const GradcheckOptions &o, std::ostream &out) {
  const Circuit circuit = circuit_from_json(parse_json(read_text_file(o.circuit)));
  const PauliObservable obs = o.observable.empty()
                                  ? default_regression_observable(circuit.num_qubits())
                                  : PauliObservable::parse(o.observable);
  if (obs.num_qubits() != circuit.num_qubits()) {
    throw ValidationError("observable width does not match the circuit");
  }
  std::vector<double> values;
  if (o.values.empty()) {
    Rng rng(o.seed);
    for (std::size_t i = 0; i < circuit.num_parameters(); ++i) {
      values.push_back(rng.uniform(-std::numbers::pi, std::numbers::pi));
    }
  } else {
    values = parse_values(o.values);
  }
  if (values.size() != circuit.num_parameters()) {
    throw ValidationError("circuit has " + std::to_string(circuit.num_parameters()) +
                          " parameters but " + std::to_string(values.size()) +
                          " values were given");
  }

  const auto shifted = param_shift_gradient({circuit, obs, values, o.shift, Execution{}});
  const auto fd = finite_difference(
      [&](std::span<const double> v) { return estimator(circuit, obs, v); }, values, o.step);
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    worst = std::max(worst, std::abs(shifted[i] - fd[i]));
  }
  json report;
  report["parameters"] = values.size();
  report["param_shift"] = shifted;
  report["finite_difference"] = fd;
  report["max_deviation"] = worst;
  out << report.dump() << "\n";
  return worst < o.threshold;
}

// --- bayes ------------------------------------------------------------------

struct BayesOptions {
  std::string network;
  std::string query;
  std::string evidence;
  std::size_t shots = 20000;
  std::size_t workers = 1;
  std::uint64_t seed = 0;
};

std::pair<std::string, int> parse_assignment(const std::string &text) {
  const auto eq = text.find('=');
  const std::string name = text.substr(0, eq);
  const std::string value = eq == std::string::npos ? "1" : text.substr(eq + 1);
  if (name.empty() || (value != "0" && value != "1")) {
    throw ValidationError("expected NAME=0 or NAME=1, got '" + text + "'");
  }
  return {name, value == "1" ? 1 : 0};
}

void bayes(const BayesOptions &o, std::ostream &out) {
  const auto bn = network_from_json(parse_json(read_text_file(o.network)));
  Query q;
  std::tie(q.target, q.target_value) = parse_assignment(o.query);
  std::istringstream ss(o.evidence);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) {
      const auto [name, value] = parse_assignment(item);
      if (!q.evidence.emplace(name, value).second) {
        throw ValidationError("evidence names '" + name + "' twice");
      }
    }
  }
  const double exact = exact_inference(bn, q);
  const auto r = rejection_inference(bn, q, o.shots, o.seed, o.workers);
  json report;
  report["estimate"] = r.estimate;
  report["exact"] = exact;
  report["accepted"] = r.accepted;
  report["shots"] = r.shots;
  out << report.dump() << "\n";
}

// --- dispatch ---------------------------------------------------------------

int report(std::ostream &err, int code, const std::string &kind, const std::string &message,
           const std::optional<std::string> &path = std::nullopt) {
  json j;
  j["error"] = kind;
  j["message"] = message;
  if (path) {
    j["path"] = *path;
  }
  err << j.dump() << "\n";
  return code;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Quantum machine learning toolkit", "qmlkit"};
  app.require_subcommand(1);

  GenDataOptions gen;
  auto *gen_cmd = app.add_subcommand("gen-data", "Write a synthetic two-feature dataset as CSV");
  gen_cmd->add_option("--kind", gen.kind, "blobs or xor")->capture_default_str();
  gen_cmd->add_option("--samples", gen.samples, "Number of rows (even)")->capture_default_str();
  gen_cmd->add_option("--noise", gen.noise, "Gaussian jitter sigma")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Jitter seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output CSV path")->required();

  TrainOptions tr;
  auto *train_cmd = app.add_subcommand("train", "Fit a model and write it as JSON");
  train_cmd->add_option("--model", tr.model, "vqc, vqr, qsvc or pegasos")->capture_default_str();
  train_cmd->add_option("--data", tr.data, "Training CSV")->required();
  train_cmd->add_option("--out", tr.out, "Model JSON path")->required();
  train_cmd->add_option("--config", tr.config, "Training JSON with an \"optimizer\" object");
  add_feature_map_options(train_cmd, tr.feature_map);
  train_cmd->add_option("--ansatz-reps", tr.ansatz_reps, "Ansatz repetitions")
      ->capture_default_str();
  train_cmd
      ->add_option("--best-of", tr.best_of,
                   "Variational fits over derived seeds; keeps the lowest loss")
      ->capture_default_str();
  train_cmd->add_option("--max-iterations", tr.max_iterations,
                        "Override the optimizer iteration cap");
  train_cmd->add_option("--C", tr.C, "QSVC regularization")->capture_default_str();
  train_cmd->add_option("--lambda", tr.lambda, "Pegasos regularization")->capture_default_str();
  train_cmd->add_option("--steps", tr.steps, "Pegasos steps")->capture_default_str();
  add_exec_options(train_cmd, tr.exec);

  PredictOptions pr;
  auto *predict_cmd = app.add_subcommand("predict", "Predict with a saved model");
  predict_cmd->add_option("--model", pr.model, "Model JSON")->required();
  predict_cmd->add_option("--data", pr.data, "Feature CSV; a label column adds metrics")
      ->required();
  predict_cmd->add_option("--out", pr.out, "Predictions CSV path")->required();
  add_exec_options(predict_cmd, pr.exec);

  KernelOptions ko;
  auto *kernel_cmd = app.add_subcommand("kernel", "Write the fidelity Gram matrix as CSV");
  kernel_cmd->add_option("--data", ko.data, "Feature CSV")->required();
  kernel_cmd->add_option("--out", ko.out, "Kernel CSV path")->required();
  add_feature_map_options(kernel_cmd, ko.feature_map);
  add_exec_options(kernel_cmd, ko.exec);

  GradcheckOptions gc;
  auto *grad_cmd =
      app.add_subcommand("gradcheck", "Compare parameter-shift and finite-difference gradients");
  grad_cmd->add_option("--circuit", gc.circuit, "Circuit JSON")->required();
  grad_cmd->add_option("--observable", gc.observable,
                       "Pauli sum, qubit 0 first; default Z on qubit 0");
  grad_cmd->add_option("--values", gc.values,
                       "Comma-separated parameter values; random from --seed if absent");
  grad_cmd->add_option("--shift", gc.shift, "Parameter shift")->capture_default_str();
  grad_cmd->add_option("--step", gc.step, "Finite-difference step")->capture_default_str();
  grad_cmd->add_option("--seed", gc.seed, "Seed for random values")->capture_default_str();

  BayesOptions bo;
  auto *bayes_cmd = app.add_subcommand("bayes", "Answer a query on a Bayesian network");
  bayes_cmd->add_option("--network", bo.network, "Network JSON")->required();
  bayes_cmd->add_option("--query", bo.query, "NAME=VALUE")->required();
  bayes_cmd->add_option("--evidence", bo.evidence, "Comma-separated NAME=VALUE list");
  bayes_cmd->add_option("--shots", bo.shots, "Rejection-sampling shots")->capture_default_str();
  bayes_cmd->add_option("--workers", bo.workers, "Sampling threads")->capture_default_str();
  bayes_cmd->add_option("--seed", bo.seed, "Sampling seed")->capture_default_str();

  std::vector<std::string> argv_storage{"qmlkit"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char *> argv;
  for (const auto &a : argv_storage) {
    argv.push_back(a.c_str());
  }

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    return report(err, 2, "usage", e.what());
  }

  try {
    if (*gen_cmd) {
      gen_data(gen);
    } else if (*train_cmd) {
      train(tr, out);
    } else if (*predict_cmd) {
      predict(pr, out);
    } else if (*kernel_cmd) {
      kernel(ko, out);
    } else if (*grad_cmd) {
      if (!gradcheck(gc, out)) {
        return report(err, 3, "gradient_mismatch",
                      "parameter-shift and finite-difference gradients disagree");
      }
    } else if (*bayes_cmd) {
      bayes(bo, out);
    }
  } catch (const SchemaError &e) {
    return report(err, 2, "schema", e.what(), e.path());
  } catch (const UnsupportedParameterError &e) {
    return report(err, 2, "unsupported_parameter", e.what());
  } catch (const ValidationError &e) {
    return report(err, 2, "validation", e.what());
  } catch (const NoSupportError &e) {
    return report(err, 3, "no_support", e.what());
  } catch (const NonFiniteError &e) {
    return report(err, 3, "non_finite", e.what());
  } catch (const DomainFailure &e) {
    return report(err, 3, e.kind(), e.what());
  } catch (const std::exception &e) {
    return report(err, 1, "internal", e.what());
  }
  return 0;
}

} // namespace qmlkit::cli

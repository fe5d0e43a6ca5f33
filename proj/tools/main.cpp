#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "coseg/baselines.hpp"
#include "coseg/brute_force.hpp"
#include "coseg/generator.hpp"
#include "coseg/instance_io.hpp"
#include "coseg/labeling_io.hpp"

namespace {

void print_metrics(const coseg::MetricsReport& m) {
  auto line = [](const char* name, const std::optional<double>& v) {
    if (v) std::cout << name << "," << *v << "\n";
  };
  std::cout << "metric,value\n";
  line("pixel_ap", m.pixel_ap);
  line("jaccard_iou", m.jaccard_iou);
  line("corloc", m.corloc);
  line("mean_box_iou", m.mean_box_iou);
  line("objective", m.objective);
  line("relaxed_objective", m.relaxed_objective);
  line("gap", m.gap);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"joint colocalization / cosegmentation solver"};
  app.require_subcommand(1);

  coseg::Hyperparams hp;
  coseg::SolverConfig scfg;
  std::string mode_str = "joint", instance_path, out_path, config_path, pred_path;
  std::pair<double, double> fg_bounds{hp.fg_min, hp.fg_max};

  auto* cmd_solve = app.add_subcommand("solve", "solve an instance in a given mode");
  cmd_solve->add_option("--mode", mode_str, "joint|b1|b2|b3|sal|sal-disc");
  cmd_solve->add_option("--instance", instance_path)->required();
  cmd_solve->add_option("--out", out_path)->required();
  cmd_solve->add_option("--alpha", hp.alpha);
  cmd_solve->add_option("--nu", hp.nu);
  cmd_solve->add_option("--mu", hp.mu);
  cmd_solve->add_option("--gamma", hp.gamma);
  cmd_solve->add_option("--beta-s", hp.beta_s);
  cmd_solve->add_option("--beta-b", hp.beta_b);
  cmd_solve->add_option("--fraction", hp.baseline_fraction);
  cmd_solve->add_option("--fg-bounds", fg_bounds, "lo,hi")->delimiter(',');
  cmd_solve->add_option("--tol", scfg.tol_primal);
  cmd_solve->add_option("--seed", scfg.seed);

  auto* cmd_gen = app.add_subcommand("gen", "generate a planted synthetic instance");
  cmd_gen->add_option("--config", config_path)->required();
  cmd_gen->add_option("--out", out_path)->required();

  auto* cmd_eval = app.add_subcommand("eval", "evaluate a labeling against ground truth");
  cmd_eval->add_option("--pred", pred_path)->required();
  cmd_eval->add_option("--instance", instance_path)->required();

  auto* cmd_oracle = app.add_subcommand("oracle", "brute-force integer optimum (small instances)");
  cmd_oracle->add_option("--instance", instance_path)->required();
  cmd_oracle->add_option("--out", out_path)->required();
  cmd_oracle->add_option("--alpha", hp.alpha);
  cmd_oracle->add_option("--nu", hp.nu);
  cmd_oracle->add_option("--mu", hp.mu);
  cmd_oracle->add_option("--gamma", hp.gamma);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_solve) {
      hp.fg_min = fg_bounds.first;
      hp.fg_max = fg_bounds.second;
      scfg.tol_dual = scfg.tol_primal;
      auto rep = coseg::validate(hp);
      if (!rep.ok()) {
        std::cerr << "invalid hyperparameters: " << rep.joined() << "\n";
        return 1;
      }
      coseg::BaselineMode mode = coseg::mode_from_name(mode_str);
      coseg::InstanceSet set = coseg::load_instance(instance_path);
      coseg::RunResult res = coseg::run(mode, set, hp, scfg);
      if (res.status == coseg::SolveStatus::kInfeasible) {
        std::cerr << "infeasible instance\n";
        return 2;
      }
      coseg::save_labeling(res, coseg::mode_name(mode), out_path);
      print_metrics(res.metrics);
    } else if (*cmd_gen) {
      coseg::SynthConfig cfg = coseg::parse_synth_config(slurp(config_path));
      coseg::save_instance(coseg::generate(cfg), out_path);
    } else if (*cmd_eval) {
      coseg::InstanceSet set = coseg::load_instance(instance_path);
      coseg::RunResult res = coseg::load_labeling(pred_path);
      coseg::MetricsReport m = res.metrics;
      std::vector<coseg::Rect> preds, gts;
      for (size_t i = 0; i < set.images.size(); ++i) {
        if (i >= res.labeling.images.size()) throw std::runtime_error("labeling too short");
        const auto& lab = res.labeling.images[i];
        if (lab.chosen_box && set.images[i].gt_box) {
          preds.push_back(set.images[i].boxes.at(*lab.chosen_box).rect);
          gts.push_back(*set.images[i].gt_box);
        }
      }
      if (!preds.empty()) {
        m.corloc = coseg::corloc(preds, gts);
        double s = 0;
        for (size_t i = 0; i < preds.size(); ++i) s += coseg::box_iou(preds[i], gts[i]);
        m.mean_box_iou = s / static_cast<double>(preds.size());
      }
      bool has_gt = true, has_labels = true;
      for (const auto& img : set.images)
        for (const auto& sp : img.superpixels)
          if (!sp.gt_foreground) has_gt = false;
      for (const auto& lab : res.labeling.images)
        if (lab.labels.empty()) has_labels = false;
      if (has_gt && has_labels) {
        coseg::PixelMetrics pm = coseg::pixel_metrics(res.labeling, set);
        m.pixel_ap = pm.pixel_ap;
        m.jaccard_iou = pm.jaccard_iou;
      }
      print_metrics(m);
    } else if (*cmd_oracle) {
      coseg::InstanceSet set = coseg::load_instance(instance_path);
      coseg::ModelMatrices mat = coseg::build_matrices(set, hp);
      coseg::BruteForceResult bf = coseg::brute_force(set, mat, hp);
      if (!bf.feasible) {
        std::cerr << "infeasible instance\n";
        return 2;
      }
      coseg::RunResult res;
      res.labeling = bf.labeling;
      res.metrics.objective = bf.objective;
      coseg::save_labeling(res, "oracle", out_path);
      std::cout << "objective," << bf.objective << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

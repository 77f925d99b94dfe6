#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "epiplan/bisim.hpp"
#include "epiplan/eval.hpp"
#include "epiplan/io.hpp"

using namespace epiplan;

namespace {

constexpr int kSchemaVersion = 1;

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Solvable: return "Solvable";
    case Verdict::Unsolvable: return "Unsolvable";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Solvable: return 0;
    case Verdict::Unsolvable: return 1;
    case Verdict::Unknown: return 2;
  }
  return 2;
}

json result_to_json(const std::string& command, const PlanResult& r) {
  json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  j["verdict"] = verdict_name(r.verdict);
  j["plan"] = r.plan;
  if (!r.unknown_reason.empty()) j["unknown_reason"] = r.unknown_reason;
  j["stats"] = {{"expanded", r.expanded},
                {"dedup_hits", r.dedup_hits},
                {"pruned", r.pruned},
                {"max_depth_reached", r.max_depth_reached}};
  return j;
}

void print_result(const PlanResult& r, bool as_json,
                  const std::string& command) {
  if (as_json) {
    std::cout << result_to_json(command, r).dump(2) << "\n";
    return;
  }
  std::cout << "verdict: " << verdict_name(r.verdict) << "\n";
  if (r.verdict == Verdict::Solvable) {
    std::cout << "plan (" << r.plan.size() << " steps):";
    for (const auto& a : r.plan) std::cout << " " << a;
    std::cout << "\n";
  }
  if (r.verdict == Verdict::Unknown)
    std::cout << "reason: search cap reached (" << r.unknown_reason << ")\n";
  std::cout << "expanded: " << r.expanded << "  dedup_hits: " << r.dedup_hits
            << "  pruned: " << r.pruned
            << "  max_depth_reached: " << r.max_depth_reached << "\n";
  for (const auto& p : r.prunes)
    std::cout << "pruned at depth " << p.depth << " via " << p.action << ": "
              << p.reason << "\n";
}

void print_state(const EpistemicState& s, const std::string& label) {
  std::cout << label << ": " << s.model.num_worlds() << " worlds\n";
  for (int w = 0; w < s.model.num_worlds(); ++w) {
    std::cout << "  " << s.model.world_names[w] << " {";
    bool first = true;
    for (int a = 0; a < s.model.uni->num_atoms(); ++a)
      if (s.model.has_atom(w, a)) {
        if (!first) std::cout << ",";
        std::cout << s.model.uni->atom_name(a);
        first = false;
      }
    std::cout << "}";
    bool des = std::find(s.designated.begin(), s.designated.end(), w) !=
               s.designated.end();
    if (des) std::cout << "  (designated)";
    std::cout << "\n";
  }
  for (int ag = 0; ag < s.model.uni->num_agents(); ++ag) {
    std::ostringstream os;
    bool any = false;
    for (int w = 0; w < s.model.num_worlds(); ++w)
      for (int v : s.model.rel[ag][w])
        if (v > w) {
          os << " (" << s.model.world_names[w] << ","
             << s.model.world_names[v] << ")";
          any = true;
        }
    if (any)
      std::cout << "  " << s.model.uni->agent_name(ag) << ":" << os.str()
                << "\n";
  }
}

LogicSpec logic_from_cli(const std::string& name, int b, int l) {
  json j;
  j["logic"] = name;
  if (b > 0) j["b"] = b;
  if (l > 0) j["l"] = l;
  return logic_from_json(j);
}

std::vector<std::string> split_plan(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_demo_coordinated_attack(const std::string& logic_name, int b,
                                std::optional<int> max_depth, bool as_json) {
  if (!logic_name.empty()) {
    LogicSpec logic = logic_from_cli(logic_name, b, 0);
    if (logic.ext == LogicSpec::Ext::None && !max_depth) max_depth = 6;
    PlanningTask t = coordinated_attack_task(logic, max_depth);
    t.options.trace = true;
    PlanResult r = plan_existence(t);
    print_result(r, as_json, "demo coordinated-attack");
    return verdict_exit(r.verdict);
  }
  // no logic given: worked example states plus the verdict table
  EpistemicState s0 = coord_s0();
  EpistemicState s1 = product_update(s0, coord_send_ab());
  EpistemicState s2 = product_update(s1, coord_send_ba());
  print_state(s0, "s0");
  print_state(s1, "s1 = s0 x send_ab");
  print_state(s2, "s2 = s1 x send_ba");
  std::cout << "\nverdicts:\n";
  auto row = [&](const std::string& label, const LogicSpec& logic,
                 std::optional<int> cap) {
    PlanResult r = plan_existence(coordinated_attack_task(logic, cap));
    std::cout << "  " << label << ": " << verdict_name(r.verdict)
              << " (expanded " << r.expanded << ", depth "
              << r.max_depth_reached << ")\n";
  };
  row("C-S5", LogicSpec::C(), {});
  for (int bb = 2; bb <= 4; ++bb)
    row("Cb-S5 b=" + std::to_string(bb), LogicSpec::Cb(bb), {});
  row("S5 cap=6", LogicSpec::S5(), 6);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"epiplan: epistemic planning over Kripke models"};
  app.set_version_flag("--version", "epiplan 1.0.0 (schema 1)");
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  std::string task_path, plan_csv, formula_text, machine_path, out_path;
  std::string logic_name;
  int b = 0, l = 0, agents = 3, trials = 200;
  std::uint64_t seed = 7;
  std::optional<int> max_depth;

  auto* plan = app.add_subcommand("plan", "decide plan existence");
  plan->add_option("task", task_path)->required();

  auto* validate = app.add_subcommand("validate", "validate a plan");
  validate->add_option("task", task_path)->required();
  validate->add_option("--plan", plan_csv, "comma-separated action names")
      ->required();

  auto* eval = app.add_subcommand("eval", "evaluate a formula at the initial state");
  eval->add_option("task", task_path)->required();
  eval->add_option("--formula", formula_text)->required();

  auto* contract_cmd = app.add_subcommand("contract", "contract the initial state");
  contract_cmd->add_option("task", task_path)->required();

  auto* check = app.add_subcommand("check-frame", "frame checks for the task");
  check->add_option("task", task_path)->required();

  auto* probe = app.add_subcommand("probe", "randomized theorem probes");
  probe->add_option("--logic", logic_name)->default_val("C-S5");
  probe->add_option("--agents", agents);
  probe->add_option("--trials", trials);
  probe->add_option("--seed", seed);
  probe->add_option("--b", b);
  probe->add_option("--l", l);

  auto* demo = app.add_subcommand("demo", "worked examples");
  std::string demo_name, demo_logic;
  demo->add_option("name", demo_name)->required();
  demo->add_option("--logic", demo_logic);
  demo->add_option("--b", b);
  int cap = -1;
  demo->add_option("--max-depth", cap);

  auto* encode = app.add_subcommand("encode-machine",
                                    "two-counter machine to planning task");
  encode->add_option("machine", machine_path)->required();
  encode->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan->parsed()) {
      PlanningTask t = load_task_file(task_path);
      PlanResult r = plan_existence(t);
      print_result(r, as_json, "plan");
      return verdict_exit(r.verdict);
    }
    if (validate->parsed()) {
      PlanningTask t = load_task_file(task_path);
      ValidationResult v = validate_solution(t, split_plan(plan_csv));
      if (as_json) {
        json j{{"schema", kSchemaVersion},
               {"command", "validate"},
               {"valid", v.ok}};
        if (!v.ok) {
          j["fail_step"] = v.fail_step;
          j["reason"] = v.reason;
        }
        std::cout << j.dump(2) << "\n";
      } else if (v.ok) {
        std::cout << "valid\n";
      } else {
        std::cout << "invalid at step " << v.fail_step << ": " << v.reason
                  << "\n";
      }
      return v.ok ? 0 : 1;
    }
    if (eval->parsed()) {
      PlanningTask t = load_task_file(task_path);
      FormulaPtr f = parse_formula(formula_text, *t.uni);
      bool holds = eval_state(t.initial, f);
      if (as_json)
        std::cout << json{{"schema", kSchemaVersion},
                          {"command", "eval"},
                          {"formula", print_formula(f, *t.uni)},
                          {"result", holds}}
                         .dump(2)
                  << "\n";
      else
        std::cout << (holds ? "true" : "false") << "\n";
      return holds ? 0 : 1;
    }
    if (contract_cmd->parsed()) {
      PlanningTask t = load_task_file(task_path);
      EpistemicState c = contract(t.initial);
      if (as_json)
        std::cout << json{{"schema", kSchemaVersion},
                          {"command", "contract"},
                          {"state", state_to_json(c)}}
                         .dump(2)
                  << "\n";
      else
        print_state(c, "contract(initial)");
      return 0;
    }
    if (check->parsed()) {
      PlanningTask t = load_task_file(task_path);
      bool all_ok = true;
      auto report = [&](const std::string& label, const FrameCheck& fc) {
        all_ok = all_ok && fc.ok;
        std::cout << label << ": " << (fc.ok ? "pass" : "FAIL — " + fc.reason)
                  << "\n";
      };
      report("initial (" + t.logic.to_string() + ")",
             check_frame_property(t.initial.model.rel,
                                  t.initial.model.num_worlds(), t.logic));
      for (const auto& a : t.actions)
        report("action " + a.name,
               check_frame_property(a.model.rel, a.model.num_events(),
                                    t.logic));
      return all_ok ? 0 : 1;
    }
    if (probe->parsed()) {
      LogicSpec logic = logic_from_cli(logic_name, b, l);
      ProbeReport r = probe_theorems(logic, agents, trials, seed);
      if (as_json) {
        json j{{"schema", kSchemaVersion},
               {"command", "probe"},
               {"logic", logic.to_string()},
               {"trials", r.trials},
               {"seed", seed},
               {"counterexamples", r.counterexamples}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "logic " << logic.to_string() << ", " << r.trials
                  << " trials, " << r.counterexamples.size()
                  << " counterexamples\n";
        for (const auto& c : r.counterexamples) std::cout << "  " << c << "\n";
      }
      return 0;
    }
    if (demo->parsed()) {
      if (demo_name != "coordinated-attack")
        throw InputError("unknown demo \"" + demo_name + "\"");
      return cmd_demo_coordinated_attack(
          demo_logic, b, cap >= 0 ? std::optional<int>(cap) : std::nullopt,
          as_json);
    }
    if (encode->parsed()) {
      TwoCounterMachine m = load_machine_file(machine_path);
      PlanningTask t = encode_machine(m);
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw InputError("cannot write " + out_path);
        out << task_to_json(t).dump(2) << "\n";
      }
      std::cout << "instructions: " << m.instructions.size()
                << ", actions: " << t.actions.size()
                << ", goal: " << print_formula(t.goal, *t.uni) << "\n";
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}

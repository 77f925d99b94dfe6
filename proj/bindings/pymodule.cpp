#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "epiplan/bisim.hpp"
#include "epiplan/eval.hpp"
#include "epiplan/io.hpp"

namespace py = pybind11;
using namespace epiplan;

namespace {

PlanningTask task_from_string(const std::string& text) {
  return task_from_json(json::parse(text));
}

std::string key_hex(const EpistemicState& s) {
  static const char* digits = "0123456789abcdef";
  CanonicalKey key = canonical_key(s);
  std::string out;
  out.reserve(key.size() * 2);
  for (unsigned char c : key) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

py::dict result_dict(const PlanResult& r) {
  py::dict d;
  switch (r.verdict) {
    case Verdict::Solvable: d["verdict"] = "Solvable"; break;
    case Verdict::Unsolvable: d["verdict"] = "Unsolvable"; break;
    case Verdict::Unknown: d["verdict"] = "Unknown"; break;
  }
  d["plan"] = r.plan;
  d["unknown_reason"] = r.unknown_reason;
  d["expanded"] = r.expanded;
  d["dedup_hits"] = r.dedup_hits;
  d["pruned"] = r.pruned;
  d["max_depth_reached"] = r.max_depth_reached;
  return d;
}

}  // namespace

PYBIND11_MODULE(_epiplan, m) {
  m.doc() = "epistemic planning over Kripke models";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  py::class_<EpistemicState>(m, "State")
      .def_property_readonly(
          "num_worlds", [](const EpistemicState& s) { return s.model.num_worlds(); })
      .def_property_readonly(
          "designated", [](const EpistemicState& s) { return s.designated; })
      .def("to_json",
           [](const EpistemicState& s) { return state_to_json(s).dump(); })
      .def("__repr__", [](const EpistemicState& s) {
        return "<State with " + std::to_string(s.model.num_worlds()) +
               " worlds>";
      });

  py::class_<PlanningTask>(m, "Task")
      .def_static("from_json", &task_from_string, py::arg("text"))
      .def_property_readonly(
          "initial", [](const PlanningTask& t) { return t.initial; })
      .def_property_readonly("num_actions", [](const PlanningTask& t) {
        return t.actions.size();
      });

  m.def("parse_print", [](const std::string& formula,
                          std::vector<std::string> agents,
                          std::vector<std::string> atoms) {
    Universe uni(std::move(agents), std::move(atoms));
    return print_formula(parse_formula(formula, uni), uni);
  }, py::arg("formula"), py::arg("agents"), py::arg("atoms"),
     "parse a formula and return its normalized rendering");

  m.def("eval_formula", [](const PlanningTask& t, const std::string& formula) {
    return eval_state(t.initial, parse_formula(formula, *t.uni));
  }, py::arg("task"), py::arg("formula"),
     "truth of a formula at the task's initial state");

  m.def("contract_state", [](const EpistemicState& s) { return contract(s); },
        py::arg("state"));

  m.def("bisimilar", [](const EpistemicState& s, const EpistemicState& t) {
    return bisimilar(s, t).bisimilar;
  }, py::arg("s"), py::arg("t"));

  m.def("canonical_key_hex", &key_hex, py::arg("state"));

  m.def("apply_action", [](const PlanningTask& t, const std::string& name) {
    for (const auto& a : t.actions)
      if (a.name == name) {
        if (!applicable(t.initial, a))
          throw InputError("action " + name + " is not applicable");
        return product_update(t.initial, a);
      }
    throw InputError("unknown action " + name);
  }, py::arg("task"), py::arg("action"),
     "product update of the initial state with one named action");

  m.def("plan", [](const std::string& task_json) {
    return result_dict(plan_existence(task_from_string(task_json)));
  }, py::arg("task_json"), "plan existence for a task given as a JSON string");

  m.def("validate_plan", [](const std::string& task_json,
                            std::vector<std::string> plan) {
    ValidationResult v =
        validate_solution(task_from_string(task_json), plan);
    py::dict d;
    d["valid"] = v.ok;
    d["fail_step"] = v.fail_step;
    d["reason"] = v.reason;
    return d;
  }, py::arg("task_json"), py::arg("plan"));

  m.def("coordinated_attack_task_json", [](const std::string& logic, int b,
                                           int max_depth) {
    json lj;
    lj["logic"] = logic;
    if (b > 0) lj["b"] = b;
    std::optional<int> cap;
    if (max_depth >= 0) cap = max_depth;
    PlanningTask t = coordinated_attack_task(logic_from_json(lj), cap);
    return task_to_json(t).dump();
  }, py::arg("logic") = "C-S5", py::arg("b") = 0, py::arg("max_depth") = -1,
     "the coordinated-attack demo task as a JSON string");

  m.def("encode_machine_json", [](const std::string& machine_json,
                                  int max_depth) {
    TwoCounterMachine mach = machine_from_json(json::parse(machine_json));
    return task_to_json(encode_machine(mach, max_depth)).dump();
  }, py::arg("machine_json"), py::arg("max_depth") = 32,
     "two-counter machine (JSON string) to planning-task JSON");
}

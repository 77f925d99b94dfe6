#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace epiplan {

// Raised on malformed user input (files, formulas, CLI arguments).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The fixed agent and atom vocabularies shared by a task's states, actions
// and formulas.  Atoms are capped at 64 so that a world's valuation fits in
// one machine word.
class Universe {
 public:
  Universe(std::vector<std::string> agents, std::vector<std::string> atoms);

  int num_agents() const { return static_cast<int>(agents_.size()); }
  int num_atoms() const { return static_cast<int>(atoms_.size()); }

  const std::string& agent_name(int i) const { return agents_.at(i); }
  const std::string& atom_name(int i) const { return atoms_.at(i); }

  // Lookup by name; throws InputError when unknown.
  int agent(const std::string& name) const;
  int atom(const std::string& name) const;
  // Lookup returning -1 when unknown.
  int find_agent(const std::string& name) const;
  int find_atom(const std::string& name) const;

  bool same_as(const Universe& other) const;

 private:
  std::vector<std::string> agents_;
  std::vector<std::string> atoms_;
  std::map<std::string, int> agent_ids_;
  std::map<std::string, int> atom_ids_;
};

using UniversePtr = std::shared_ptr<const Universe>;

}  // namespace epiplan

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hamvt/constructions.hpp"
#include "hamvt/graph.hpp"
#include "hamvt/permgrp.hpp"

namespace hamvt {

enum class FamilyKind {
  Dihedral,     // PSL(2,q) on cosets of D_{q-1} or D_{q+1}
  Grassmann,    // PSL(m,q) on 2-spaces
  Orthogonal,   // POmega on totally singular points
  TwoSubsets,   // A_c on 2-subsets
  Abstract,     // permutation action from generator data or built in code
  FixedGraph,   // a shipped graph
};

struct FamilyInfo {
  std::string id;
  FamilyKind kind;
  std::string description;
  char param = 0;                       // 'q', 'c' or 0
  std::uint64_t default_param = 0;
  std::vector<std::size_t> suborbit_lengths;  // expected non-trivial lengths, empty if parametric
};

const std::vector<FamilyInfo>& family_table();
const FamilyInfo& family_info(std::string_view id);  // throws std::invalid_argument

struct CaseDescriptor {
  std::string family;
  std::optional<std::uint64_t> q, c;
  std::optional<std::size_t> suborbit;
  std::string strategy = "auto";  // auto | search

  std::string id() const;  // canonical text, parses back to the same descriptor
};

// "family [q=Q|c=C] [suborbit=K] [strategy=auto|search]"; throws std::invalid_argument.
CaseDescriptor parse_case(std::string_view line);

// Transitive action of an Abstract family (coset action for subgroup data).
GroupAction abstract_action(const FamilyInfo& fam, const std::filesystem::path& data_dir);

// PSL(3,p) extended by the polarity, on the flags of PG(2,p).
GroupAction flag_action(std::uint64_t p);
// Induced action on 2-subsets, indexed by pair_index.
GroupAction two_subset_action(const GroupAction& a);

struct SuborbitRow {
  std::size_t index = 0;
  std::size_t length = 0;
  bool self_paired = true;
  std::size_t paired = 0;
  std::string representative;
  std::string description;  // closed-form classification when one exists
  bool oracle_agrees = true;
};

// Non-trivial suborbits of the family's action; dihedral families are checked
// against the generic orbit computation.
std::vector<SuborbitRow> family_suborbits(const CaseDescriptor& c, const std::filesystem::path& data_dir);

// Orbital graph of suborbit K (the shipped graph for FixedGraph families).
Graph family_graph(const CaseDescriptor& c, const std::filesystem::path& data_dir);

// Runs every selected orbital graph of the case through its ladder.
std::vector<CaseReport> run_case(const CaseDescriptor& c, const RunOptions& opts, const std::filesystem::path& data_dir);

}  // namespace hamvt

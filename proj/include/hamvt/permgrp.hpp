#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hamvt {

// Bijection of {0..n-1}.  Products compose left to right: (a * b)(x) = b(a(x)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t n);
  explicit Permutation(std::vector<std::uint32_t> images);

  static Permutation from_cycles(std::size_t n, const std::vector<std::vector<std::uint32_t>>& cycles);
  // "(0 1 2)(3 4)"; "()" or an empty string is the identity.
  static Permutation parse(std::size_t n, std::string_view text);

  std::size_t degree() const { return images_.size(); }
  std::uint32_t operator()(std::uint32_t x) const { return images_[x]; }
  const std::vector<std::uint32_t>& images() const { return images_; }

  Permutation operator*(const Permutation& o) const;
  Permutation inverse() const;
  Permutation pow(std::int64_t e) const;
  bool is_identity() const;
  std::uint64_t order() const;
  std::vector<std::vector<std::uint32_t>> cycles() const;  // nontrivial cycles only
  std::string to_string() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::uint32_t> images_;
};

std::vector<std::uint32_t> orbit(const std::vector<std::uint32_t>& points, const std::vector<Permutation>& gens);

// (m, n) when g is m cycles of common length n > 1 covering the whole domain.
std::optional<std::pair<std::size_t, std::size_t>> is_semiregular(const Permutation& g);

// Group with a stabilizer chain built by deterministic Schreier-Sims.
class PermGroup {
 public:
  struct Level {
    std::uint32_t base_point = 0;
    std::vector<Permutation> gens;            // strong generators fixing earlier base points
    std::vector<std::uint32_t> orbit;         // basic orbit, breadth-first order
    std::vector<std::int32_t> position;       // point -> index in orbit, -1 if absent
    std::vector<Permutation> transversal;     // transversal[k] maps base_point to orbit[k]
    std::vector<std::uint32_t> checked;       // Schreier generators already verified per orbit point
  };

  PermGroup(std::size_t degree, std::vector<Permutation> gens, std::vector<std::uint32_t> base_prefix = {});

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  const std::vector<Level>& levels() const { return levels_; }
  std::vector<std::uint32_t> base() const;
  std::uint64_t order() const;
  bool contains(const Permutation& g) const;
  // Uniform random element (product of random transversal entries).
  Permutation random_element(std::mt19937_64& rng) const;

 private:
  std::pair<Permutation, std::size_t> strip(Permutation h, std::size_t from) const;
  void add_level(std::uint32_t base_point);
  void extend_orbit(Level& lv);
  void build(std::vector<std::uint32_t> base_prefix);

  std::size_t degree_;
  std::vector<Permutation> gens_;
  std::vector<Level> levels_;
};

// Representative of the coset H*g that is canonical for the coset: the element
// minimizing the image tuple of H's base points.
Permutation canonical_coset_rep(const PermGroup& H, const Permutation& g);

// A group acting on {0..degree-1} through named generators.
struct GroupAction {
  std::uint32_t degree = 0;
  std::vector<Permutation> generators;
  std::vector<std::string> generator_names;
};

struct CosetAction {
  GroupAction action;                   // right multiplication on [G:H]
  std::vector<Permutation> representatives;  // canonical representative per coset, index 0 = H
};

CosetAction coset_action(const PermGroup& G, const PermGroup& H, std::size_t cap = 100000);

struct Suborbit {
  std::vector<std::uint32_t> points;  // ascending
  std::size_t paired = 0;             // index of the paired suborbit
  bool self_paired = true;
  std::uint32_t representative() const { return points.front(); }
  std::size_t length() const { return points.size(); }
};

// Orbits of the stabilizer of `base`; the trivial suborbit comes first, the rest
// ordered by smallest point.  Requires a transitive action.
std::vector<Suborbit> suborbits(const GroupAction& action, std::uint32_t base = 0);

// Generator data files.
struct GeneratorData {
  std::size_t degree = 0;
  std::vector<Permutation> generators;  // named a, b, c, ... in file order
};

struct SubgroupData {
  std::filesystem::path parent;
  std::optional<std::uint64_t> order;
  std::vector<std::string> words;
};

GeneratorData load_generators(const std::filesystem::path& path);
void save_generators(const std::filesystem::path& path, const GeneratorData& data, const std::string& comment = {});
SubgroupData load_subgroup(const std::filesystem::path& path);
// "a b a^-1 b^2" over generators named a, b, c, ...
Permutation evaluate_word(const std::vector<Permutation>& gens, std::string_view word);

}  // namespace hamvt

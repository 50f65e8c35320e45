#pragma once

// Linear bookkeeping of Gorenstein shifts across rings, maps and cofibre
// sequences.
//
//   node N [shift=a]        shift(N) = a when given
//   axiom N a "note"        shift(N) = a
//   cofibre S R Q           shift(R) = shift(S) + shift(Q)
//   relative S R m          shift(S) = shift(R) + m     (Hom_S(R,S) = Sigma^m R)
//   thh C T p=<prime>       shift(T) = -shift(C) - 3
//   descent T B A           shift(T) = shift(B) + shift(A)

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gdual {

enum class RelationKind { known, cofibre, relative, thh, descent };

struct LedgerRelation {
  RelationKind kind = RelationKind::known;
  std::vector<std::string> nodes;
  int value = 0;  // known shift or relative shift
  int prime = 0;  // thh only
  std::string note;
  std::string text;  // source line, for traces
};

struct ShiftLedger {
  std::vector<std::string> nodes;  // declaration order
  std::vector<LedgerRelation> relations;

  void declare(const std::string& name);
  void add(LedgerRelation rel);
};

ShiftLedger parse_ledger(std::string_view text);
ShiftLedger load_ledger(const std::string& path);
/// Several ledgers solved as one system.
ShiftLedger merge_ledgers(const std::vector<ShiftLedger>& parts);

struct DerivationStep {
  std::string node;
  int value = 0;
  std::string rule;  // the relation used, as written
  std::string explanation;
};

struct LedgerConflict {
  std::string description;
  std::vector<std::string> relations;  // every relation of the inconsistent component
};

struct LedgerSolution {
  std::map<std::string, int> values;
  std::vector<std::string> unresolved;
  std::vector<DerivationStep> trace;
  std::vector<LedgerConflict> conflicts;
  bool consistent() const { return conflicts.empty(); }

  std::string to_markdown() const;
  std::string to_json() const;
};

LedgerSolution solve(const ShiftLedger& ledger);

/// Shift of THH(R;k) for R Gorenstein of shift a: -a - 3.
int thh_descent_shift(int a);
/// shift(THH C) = shift(THH B) + shift(A).
int thh_general_descent(int shift_thh_b, int shift_a);

}  // namespace gdual

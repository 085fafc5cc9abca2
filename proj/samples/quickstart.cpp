// Builds a modular tester for a random n = 10 instance and answers a few
// targets, then runs both LO variants on the planted target.

#include <iostream>

#include "subsum/subsum.hpp"

using namespace subsum;

static void show(const char* label, const std::optional<Indicator>& e) {
  std::cout << label << ": ";
  if (!e) {
    std::cout << "none\n";
    return;
  }
  for (int x : *e) std::cout << x;
  std::cout << "\n";
}

int main() {
  const std::size_t n = 10;
  const RangePolicy policy = RangePolicy::of_kind(RangePolicy::Kind::modular_range);
  const SubsetSumInstance inst = gen_instance(n, policy, 2024, PlantSpec{});
  const Integer T = inst.planted->T;
  std::cout << "weights have " << bit_length(inst.R) << " bits, density "
            << density_value(inst) << "\n";

  const ModularTester tester = build_tester(inst.a, *policy.prime(n));
  std::cout << "tester usable: " << (tester.usable() ? "yes" : "no") << "\n";
  if (tester.usable()) {
    show("query T", tester.query(T).witness);
    show("query T+1", tester.query(T + 1).witness);
    show("query a1+a2", tester.query(inst.a[0] + inst.a[1]).witness);
  }

  const LoConfig lo = LoConfig::automatic(n);
  show("classic LO", solve_classic(inst.a, T, lo).solution);
  show("truncated LO", solve_truncated(inst.a, T, lo).solution);
  show("oracle", brute_force_oracle(inst.a, T));
}

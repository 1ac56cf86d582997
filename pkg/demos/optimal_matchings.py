"""
Choosing among stable matchings
===============================

Stable matchings can differ a lot in how well they treat each side.
Four yardsticks are compared here on a random instance, then the
optimisation program for one of them is written out for a DLV solver.
"""
import sys

from smti_asp import encode, oracle
from smti_asp.instances import format_instance, generate_instance
from smti_asp.model import Criterion, matching_cost

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 3
instance = generate_instance(3, 3, 0.4, 0.2, seed)
print(format_instance(instance))

# A person's cost is one more than the number of options they rank
# strictly above their partner (or above being single).
stable = oracle.enumerate_stable(instance)
print(f"{len(stable)} stable matchings")
print(f"{'matching':40} men  women  sexeq  egal  regret  singles")
for matching in stable:
    c = matching_cost(instance, matching)
    print(f"{str(matching):40} {c.man_weight:3}  {c.woman_weight:5}  {c.sexeq:5}  {c.weight:4}  {c.regret:6}  {c.singles:7}")

print()
for name in ("sexeq", "egal", "regret", "singles"):
    value, winners = oracle.optimize(instance, Criterion.parse(name))
    print(f"min {name:8} = {value:2}  attained by {len(winners)} of {len(stable)}")

# The matching-maximising view is "singles" minimised; the opposite
# direction is available too.
value, _ = oracle.optimize(instance, Criterion.parse("singles", "max"))
print(f"max singles  = {value:2}")

# The program text uses #succ, #int and #maxint, so it needs an external
# solver; only its grounded size is computed here.
criterion = Criterion.parse("regret")
text = encode.emit_opt_program(instance, criterion)
print(f"\nregret program: {len(text.splitlines())} lines, {encode.opt_grounded_size(instance, criterion)} ground rules")
print("\n".join(text.splitlines()[-8:]))

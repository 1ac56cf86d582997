"""
Two men, three women, three stable matchings
============================================

A small instance followed from preference lists to answer sets.
Run with ``python demos/example3_walkthrough.py``.
"""
from smti_asp import asp, encode, gs, oracle
from smti_asp.model import Matching, PreferenceList, SmtiInstance, block_report

# Each list is a sequence of tie-groups, best first.  The last group is
# tied with staying single, so m2 would as soon stay alone as marry w1,
# and an empty last group means every listed partner beats being single.
instance = SmtiInstance(
    men=[PreferenceList.of([1], [2, 3], []), PreferenceList.of([2], [1])],
    women=[PreferenceList.of([1, 2], []), PreferenceList.of([1], []), PreferenceList.of([2], [1], [])],
)

# The brute-force oracle checks every matching for blocking pairs and
# blocking individuals.
stable = oracle.enumerate_stable(instance)
print("weakly stable matchings:")
for matching in stable:
    print("  ", matching)

# Pairing m1 with w2 leaves m1 and w1 both wanting each other.
attempt = Matching.from_couples(instance.n, instance.p, [(1, 2)])
report = block_report(instance, attempt)
print("\nm1-w2 alone is stable?", report.stable, "blocking pairs:", sorted(report.blocking_pairs))

# The same three matchings come out of the induced logic program.  Every
# rule is ground, so the answer sets are computed exactly.
program = encode.encode_smti(instance)
print(f"\nthe normal program has {len(program)} ground rules; the first few:")
for line in encode.emit_dlv(program).splitlines()[:6]:
    print("  ", line)

answer_sets = asp.enumerate_answer_sets(program, max_atoms=None)
print(f"\n{len(answer_sets)} answer sets, projected to accept/2:")
for interp in answer_sets:
    print("  ", encode.matching_from_answer_set(interp))

# The program is tight, so its answer sets are the models of its completion.
models = asp.models_of_completion(encode.encode_completion(instance))
print("\ntight:", asp.is_tight(program), "| completion models:", len(models))

# Deferred acceptance gives one of them in polynomial time.
print("\nmen propose:  ", gs.solve_gs(instance, None, "men"))
print("women propose:", gs.solve_gs(instance, None, "women"))

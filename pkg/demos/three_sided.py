"""
Families of three
=================

Men rank (woman, child) pairs, women rank (man, child) pairs and children
rank (man, woman) pairs.  Unlike the two-sided case, a stable matching
need not exist.
"""
from smti_asp import asp, encode, threedim
from smti_asp.instances import generate_instance_3d

for seed in range(10):
    instance = generate_instance_3d(2, 2, 2, 0.3, 0.3, seed)
    stable = threedim.enumerate_stable_3d(instance)
    # the induced program agrees with the brute-force search
    answer_sets = asp.enumerate_answer_sets(encode.encode_smti_3d(instance), max_atoms=None)
    assert sorted(threedim.matching3_from_answer_set(a) for a in answer_sets) == stable
    print(f"2x2x2 seed {seed}: {len(stable)} stable matching(s)")

# Small cubes nearly always have one.  With a third man left over it can
# fail: a triple blocks when all three members strictly prefer it, and
# here some triple or some unhappy person always objects.
instance = generate_instance_3d(3, 2, 2, 0.3, 0.2, 55)
print("\n3x2x2 seed 55 exists:", threedim.exists_stable_3d(instance))
print("answer sets of its program:", len(asp.enumerate_answer_sets(encode.encode_smti_3d(instance), max_atoms=None)))
for matching in threedim.all_matchings_3d(instance)[:6]:
    triples = sorted(threedim.blocking_triples(instance, matching))
    lonely = sorted(str(x) for x in threedim.blocking_individuals_3d(instance, matching))
    print(f"  {str(matching):48} blocking triples {triples} individuals {lonely}")

# The braid group B_4 acting by half twists on the loops.

from awskein.braidaction import beta_on_generator, beta_word, verify_braid_action
from awskein.freealg import parse_expr

# beta_1 exchanges punctures 1 and 2
print(beta_on_generator(1, frozenset({1})))        # S2
print(beta_on_generator(1, frozenset({2, 3})))     # a loop with a double point

# when only i+1 lies in A the loop is dragged around puncture i
print(beta_on_generator(2, frozenset({1, 3, 4})))

# words act right to left; negative letters are inverse twists
x = parse_expr("S13*S24")
y = beta_word([1, 2, 1], x)
print(y == beta_word([2, 1, 2], x))
print(beta_word([-2, 2], parse_expr("S134")))

report = verify_braid_action()
print(report["well_defined_checked"], "relation images,", report["braid_checked"], "braid relations, ok:", report["ok"])

# Normal forms in the skein algebra of the five-punctured sphere.
#
# Loops around subsets of the four inner punctures are written S12, S134, ...
# The loops S1..S4 and S1234 are central.  D, T and P are the extended
# generators: loops with double points and pairs of disjoint loops.

from awskein.freealg import SIGMA05, parse_expr
from awskein.rewrite import check_confluence, irreducible_monomials
from awskein.skein import golden_system, load_appendix_corpus

system = golden_system()            # 280 rules, every left-hand side a pair of letters
print(len(system), "rules over", len(SIGMA05), "letters")

# a product of two crossing loops is rewritten into ordered words
x = parse_expr("S23*S12")
print("S23*S12 =", system.normal_form(x))

# central loops commute with everything and are pulled to the front
print(system.normal_form(parse_expr("S12*S1*S23*S4")))

# every relation of the corpus reduces to zero
corpus = load_appendix_corpus()
print(sum(1 for r in corpus if not system.normal_form(r.residual)), "of", len(corpus), "relations vanish")

# the diamond lemma: every overlap ab.bc resolves, so irreducible words form a basis
report = check_confluence(system)
print(report["resolved"], "of", report["ambiguities"], "ambiguities resolve")

# irreducible words by degree (a double point counts twice)
print(irreducible_monomials(system, 8))

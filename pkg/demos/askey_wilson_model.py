# The Askey-Wilson generators Lambda_A inside U_q(sl2)^(x)4.
#
# Lambda_A is the quantum Casimir spread over the tensor factors in A.
# Sending each loop s_A to -Lambda_A (and reversing products) turns every
# skein relation into an identity in U_q(sl2)^(x)4.

from awskein.coeff import Q, QINV
from awskein.freealg import parse_expr
from awskein.tensor import SkeinImage, build_lambda, verify_aw_commutators, verify_iso_corpus
from awskein.uqsl2 import LAMBDA, E, F, K, casimir_ef

print("Lambda =", LAMBDA)
print("same Casimir from the EF form:", LAMBDA == casimir_ef())
print("central:", all(h * LAMBDA == LAMBDA * h for h in (E, F, K)))

L13 = build_lambda((1, 3), 4)
print("Lambda_13 has", len(L13.terms), "terms")

# the loop s13 maps to -Lambda_13
image = SkeinImage()
print(image(parse_expr("S13")) == -L13)

# a crossing relation evaluated in the tensor power
lhs = parse_expr("S13*S24")
print("s13 s24 has", len(image(lhs).terms), "terms in U^(x)4")

report = verify_iso_corpus()
print(report["checked"], "relations checked, failures:", len(report["failures"]))

# the q-commutator of two Askey-Wilson generators closes on the generators
r = verify_aw_commutators(4, "reversed")
print(r["checked"], "q-commutators and", r["commuting_checked"], "commuting pairs exact:", r["ok"])

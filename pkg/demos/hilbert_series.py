# Hilbert series of the skein algebra, three ways.

from awskein.hilbert import character_route, closed_form_h, enumerated_series
from awskein.skein import golden_system

# closed form for n tensor factors (here the five-punctured sphere, n = 4)
print("closed     ", closed_form_h(4, 10))

# from the graded character: read off the u^1 coefficient of (u - 1/u) h(u, t)
print("character  ", character_route(4, 10, "bivariate"))
print("convolution", character_route(4, 10, "convolution"))

# by counting irreducible words of the rewriting system, times the central ring
print("enumerated ", enumerated_series(golden_system(), 10))

# other numbers of factors
for n in range(1, 6):
    print(n, closed_form_h(n, 8).as_ints())

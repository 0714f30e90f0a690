"""Exact computations for the Kauffman bracket skein algebra of the
five-punctured sphere and its Askey-Wilson model in U_q(sl2)^(x)4.

Submodules: coeff (Laurent polynomials in q^(1/4)), centralring, freealg
(noncommutative polynomials over the 20 extended loop generators), rewrite
(reduction systems and completion), skein (relation corpus), uqsl2, tensor
(the Askey-Wilson generators and braided machinery), hilbert, braidaction and
cli.
"""

__version__ = "0.1.0"

"""
Zeros of the Bessel polynomials: closed-form approximations, electrostatic Newton solver
and an independent Aberth-Ehrlich oracle.
"""

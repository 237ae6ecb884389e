"""Exact computations with positive self-adjoint Hopf algebras, the
Heisenberg double of symmetric functions, and a based 2-vector-space model
for checking mates and Beck-Chevalley squares."""

__version__ = "0.1.0"

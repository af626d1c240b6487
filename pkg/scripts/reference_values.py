"""Detector values for W and GHZ at the coarse grid and at convergence.

The coarse 15x15 midpoint numbers are the ones to compare against published
tables; the 201x201 trapezoid numbers are the converged values frozen in the
test suite.
"""

from starwitness.qubits import named_state
from starwitness.witness import QuadratureSpec, i_n_detector


def main():
    print(f"{'state':6} {'N':>2} {'15x15 midpoint':>15} {'201x201 trapezoid':>18}")
    for n in (1, 4):
        for name in ("W", "GHZ"):
            rho = named_state(name).projector()
            coarse = i_n_detector(rho, QuadratureSpec.replication(n))
            fine = i_n_detector(rho, QuadratureSpec(n, 201, 201, "trapezoid"))
            print(f"{name:6} {n:>2} {coarse:15.5f} {fine:18.5f}")


if __name__ == "__main__":
    main()

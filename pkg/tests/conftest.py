from fractions import Fraction

import pytest

from qaoa_ising.ising import IsingModel
from qaoa_ising.lattice import LatticeKind, build_unit_cell

# Seven reference points on the 3x3 orthogonal-dimer cell:
# (j2, h, degeneracy, field-aligned M, beta1/pi, gamma1/pi, shots)
NINE_SPIN_POINTS = [
    (0.240, 1.440, 1, Fraction(1, 9), 0.750, -0.507, 400),
    (3.840, 0.480, 4, Fraction(1, 9), 0.112, -0.048, 1000),
    (3.840, 1.680, 4, Fraction(3, 9), 0.121, -0.043, 1000),
    (1.680, 1.920, 2, Fraction(3, 9), 0.131, -0.056, 400),
    (2.000, 2.480, 4, Fraction(5, 9), 0.143, -0.050, 1000),
    (1.680, 3.600, 1, Fraction(7, 9), 0.182, -0.046, 400),
    (0.240, 5.520, 1, Fraction(9, 9), 0.244, -0.041, 400),
]


@pytest.fixture(scope="session")
def square3():
    return build_unit_cell(LatticeKind.SQUARE, 3)


@pytest.fixture(scope="session")
def ss3():
    return build_unit_cell(LatticeKind.SHASTRY_SUTHERLAND, 3)


@pytest.fixture(scope="session")
def tri3():
    return build_unit_cell(LatticeKind.TRIANGULAR, 3)


@pytest.fixture(scope="session")
def nine_spin_models(ss3):
    return [
        IsingModel(cell=ss3, j1=1.0, j2=j2, h=h)
        for (j2, h, _, _, _, _, _) in NINE_SPIN_POINTS
    ]

"""Ground-state level crossings of the star as a function of inhomogeneity x."""

import numpy as np

from starwitness.errors import NoCrossingError
from starwitness.spinstar import transition_couplings

for x in np.linspace(0.25, 3.0, 12):
    try:
        low, high = transition_couplings(1.0, x)
        print(f"x={x:5.2f}  8 -> 4- at c={low:.5f}  4- -> 2- at c={high:.5f}")
    except NoCrossingError:
        print(f"x={x:5.2f}  8 -> 4- at c={1 / np.sqrt(2 + x * x):.5f}  no second crossing")

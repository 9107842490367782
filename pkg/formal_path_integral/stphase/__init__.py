from formal_path_integral.stphase.symtensor import SymTensor, gaussian_moment
from formal_path_integral.stphase.formal import (
    AsymptoticExpansion,
    Insertion,
    contract,
    check_critical,
    formal_integral,
    required_rank,
    sign_factor,
    SIGN_CONVENTIONS,
)
from formal_path_integral.stphase.oracle import numeric_oracle, hbar_sweep, cutoff, SweepRow
from formal_path_integral.stphase.potential import Potential

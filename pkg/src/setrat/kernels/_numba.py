"""numba-compiled versions of the scalar-loop kernels."""

from numba import njit

from . import _loops

check_alpha = njit(cache=True)(_loops.check_alpha)
check_gamma = njit(cache=True)(_loops.check_gamma)
check_alpha_hat_ssp = njit(cache=True)(_loops.check_alpha_hat_ssp)
check_alpha_hat_def = njit(cache=True)(_loops.check_alpha_hat_def)
check_gamma_hat = njit(cache=True)(_loops.check_gamma_hat)
check_warp = njit(cache=True)(_loops.check_warp)
check_path_independence = njit(cache=True)(_loops.check_path_independence)
check_aizerman = njit(cache=True)(_loops.check_aizerman)
check_generalized_condorcet = njit(cache=True)(_loops.check_generalized_condorcet)
stable_mask = njit(cache=True)(_loops.stable_mask)
margin_matrix = njit(cache=True)(_loops.margin_matrix)

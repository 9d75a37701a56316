"""Twin-prime windows, double-sieve predictions and Polignac gap ratios."""

from .asymptotics import (AsymptoticPrediction, ScenarioResult, cesaro_nth_prime,
                          predict_twins_asymptotic, product_estimate, scenario_experiment)
from .candidates import CandidateRange, candidate_bounds, candidate_count_approx, enumerate_candidates
from .polignac import (GapSpec, PolignacRecord, RatioStats, count_pairs_m, expected_ratio,
                       ratio_stats, scan_all_gaps)
from .prediction import (MERTENS_FACTOR, PredictionBreakdown, mertens_product, predict_twins,
                         product_pminus2_over_p, telescoping_check, twin_constant_partial)
from .primes import (PreconditionError, PrimalityWindow, PrimeTable, nth_prime, segmented_window,
                     sieve_upto)
from .twins import TwinScanRecord, count_twins_in_window, scan_twin_windows, survives_double_sieve

__version__ = "0.1.0"

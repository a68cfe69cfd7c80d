"""Size caps for the exhaustive code paths.

Every cap guards an enumeration that is exponential in its argument; the
defaults keep all such paths within desk-scale time and memory.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    arity_cap: int = 16               # truth tables up to 2^16 entries
    counting_cap: int = 24            # exact model counts enumerate 2^n assignments
    backtracking_cap: int = 24        # complete search fallback, worst case 2^n
    equivalence_bruteforce_cap: int = 20
    permutation_search_cap: int = 8   # n! permutations
    vcgi_bruteforce_cap: int = 9      # color-respecting bijections
    normal_form_candidate_cap: int = 200_000


DEFAULT_LIMITS = Limits()

ARITY_CAP = DEFAULT_LIMITS.arity_cap

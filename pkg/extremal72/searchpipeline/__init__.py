""" The staged search: construction of the candidates L' and the distance sieve over each of them. """

from .report import SearchReport, parse_report, render_report
from .search import full_search
from .sieve import SieveState, direct_filter, sieve_candidate, staged_filter
from .stages import CandidateL, build_AG, build_C36, build_L, refine_Lprime

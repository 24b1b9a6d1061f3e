"""Dillon-like bent functions from rational trace blocks over GF(2^m)."""

__version__ = "0.1.0"

from .gf2m import FieldError, FieldSpec, field_new
from .boolfun import TracePoly, TruthTable, WalshSpectrum, anf_degree, from_trace_poly, \
    is_bent, is_hyper_bent_def, rational_h, walsh
from .dillon import DillonFunction, bent_criterion_U, detect_dillon, restricted_walsh
from .expsums import KloostermanTable, kloosterman, kloosterman_table, rational_sum_S, xi
from .constructions import MAJ3, X1, X1X2, X1X2X3, Combiner, HParams, build_h, \
    enumerate_bent, thm1_check, thm2_check, thm3_check, xxeq_criterion
from .polyform import DillonPolynomial, expand_h1, verify_expansion
from .eainv import InvariantFingerprint, distinguish, fingerprint

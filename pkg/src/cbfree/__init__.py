"""cbfree: finitely supported automorphisms of the infinite-rank free
group, with machine-verified three-pair bounded factorizations.

Public surface re-exported here; see the module docstrings for the
underlying machinery (words, nielsen, automorphisms, stallings,
whitehead, factorization).
"""

from .automorphisms import (
    FinSuppAut,
    apply,
    compose,
    elementary,
    fixes_prefix,
    format_aut,
    from_images,
    identity,
    invert,
    parse_aut,
    random_aut,
)
from .factorization import (
    Certificate,
    VerificationReport,
    approximate,
    certificate_from_json,
    certificate_to_json,
    factorize,
    swap_f,
    swap_g,
    verify_certificate,
)
from .nielsen import (
    InvertEntry,
    MoveLog,
    MultiplyEntry,
    NielsenMove,
    SwapEntries,
    is_basis_of,
    log_to_automorphism,
    nielsen_reduce,
)
from .stallings import StallingsGraph, build_graph, contains, rank, to_dot
from .whitehead import (
    WhiteheadMove,
    carry_to_standard,
    complement_basis,
    enumerate_whitehead,
)
from .words import (
    EMPTY,
    Letter,
    Word,
    concat,
    format_word,
    generator,
    invert_word,
    max_index,
    parse_word,
    reduce,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "EMPTY",
    "FinSuppAut",
    "InvertEntry",
    "Letter",
    "MoveLog",
    "MultiplyEntry",
    "NielsenMove",
    "StallingsGraph",
    "SwapEntries",
    "VerificationReport",
    "WhiteheadMove",
    "Word",
    "apply",
    "approximate",
    "build_graph",
    "carry_to_standard",
    "certificate_from_json",
    "certificate_to_json",
    "complement_basis",
    "compose",
    "concat",
    "contains",
    "elementary",
    "enumerate_whitehead",
    "factorize",
    "fixes_prefix",
    "format_aut",
    "format_word",
    "from_images",
    "generator",
    "identity",
    "invert",
    "invert_word",
    "is_basis_of",
    "log_to_automorphism",
    "max_index",
    "nielsen_reduce",
    "parse_aut",
    "parse_word",
    "random_aut",
    "rank",
    "reduce",
    "swap_f",
    "swap_g",
    "to_dot",
    "verify_certificate",
]

"""Extended integrated interleaved (EII) array codes over GF(2^b)."""

from .gf import GF, FieldElement, field
from .errors import (CapabilityUnavailable, ConstructionError, MiscorrectionDetected, NotSystematic,
                     Uncorrectable)
from .linear_codes import (HCoefficients, LinearCode, NestedFamily, VandermondeCoefficients, VerticalCode,
                           make_bch, make_cyclic, make_extended, make_from_H, make_parity, make_repetition,
                           make_rs, make_whole, verify_nested)
from .eii import DataLayout, EiiCode, UProfile, build_eii, build_eii_pc
from .decode import (ReceivedArray, capability_profile, decodable, decode, decode_erasures,
                     decode_errors_erasures, iterative_decode, pattern_within_profile)

__version__ = "0.1.0"

"""Chor-Rivest knapsack cryptosystem over F_{p^h} at desk scale."""

from .encoding import ConstantWeightVector, binomial, decode_message, encode_message
from .field import (
    ExtensionField,
    PrimeFieldPoly,
    discrete_log,
    discrete_log_naive,
    find_primitive,
    is_irreducible,
    poly_mul_mod,
    random_irreducible,
)
from .scheme import (
    ChorRivestPrivateKey,
    ChorRivestPublicKey,
    check_parameters,
    decrypt,
    encrypt,
    keygen,
    recover_logs,
)

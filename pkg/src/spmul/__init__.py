"""Sparse polynomial multiplication and product verification over the
integers and finite fields, in time quasi-linear in input plus output."""

from .arith import (RandomSource, first_primes, irreducible_poly, is_prime,
                    lambda_coeff, lambda_no_collision, lambda_nonzero,
                    random_prime)
from .errors import (CharacteristicTooSmallError, PolyFileError,
                     RetryBudgetError, RingMismatchError, SpmulError,
                     UnsupportedRingError)
from .interp import InterpJob, find_terms, interp_sum_sp
from .multivar import (MultiPoly, canonicalize_multi, from_univariate,
                       inverse_kronecker, kronecker, multivar_product_field,
                       multivar_product_smallchar, multivar_product_z,
                       naive_mul_multi, randomized_kronecker,
                       sparsity_estimate, to_univariate)
from .poly import (DenseCyclic, SparsePoly, add, canonicalize, cyclic_reduce,
                   dense_cyclic_mul, derivative, eval_sparse, from_dense,
                   monomial, naive_mul, negate, reduce_coeffs_mod_q, scale,
                   sub, to_dense, zero_poly)
from .product import ProductParams, sparse_product, sumset_size
from .rings import (RingSpec, add_mul_count, ext_field, integers, mul_count,
                    prime_field, reset_mul_count)
from .verify import VerifyParams, eval_cyclic_product, verify_sp, verify_sum_sp

__version__ = "0.1.0"

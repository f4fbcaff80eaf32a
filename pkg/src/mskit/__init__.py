"""mskit: mixed Schur transform toolkit.

Block-diagonalize mixed tensor powers U^{(x)n} (x) conj(U)^{(x)m} of a qudit
unitary, label the resulting basis by staircases, Gelfand-Tsetlin patterns,
and paths in the box add/remove tower, and use the transform to analyze and
simulate unitary-equivariant quantum channels.
"""

from .staircase import (Staircase, add_box_set, dim, from_pair, interlaces,
                        remove_box_set, to_pair)
from .gelfand import (GTPattern, enumerate_patterns, index_of, pattern_at,
                      pattern_weight, subduce)
from .bratteli import (BratteliDiagram, BratteliPath, CapExceeded, build,
                       census, count_paths_reordered, decode_path, encode_path,
                       paths_to)
from .brauer import (WalledBrauerDiagram, all_diagrams, compose,
                     from_permutation, partial_transpose, represent)
from .wigner import ReducedWignerBlock, dual_reduced_wigner, reduced_wigner_operator
from .cg import CGTransform, bend, defining_cg, dual_cg
from .schur import (SchurTransform, build_mixed_schur, ptpqp_amplitude,
                    verify_blockdiag, verify_brauer, weight_check)
from .channels import (ChoiMatrix, apply_direct, choi_to_schur, example_channel,
                       is_equivariant, m2_success_probability, teleport_apply,
                       twirl, weyl_operator)

__version__ = "0.1.0"

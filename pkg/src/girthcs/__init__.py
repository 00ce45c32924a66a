"""Girth-based reconstruction guarantees for binary compressed-sensing matrices."""
from girthcs._backend import BACKEND
from girthcs.binmat import (BUILTIN_CERTIFICATES, BUILTIN_NAMES, BinaryMatrix, builtin,
                            generate_regular, load_alist, load_dense, save_alist, save_dense)
from girthcs.bounds import (ApproximationConstants, GuaranteeBundle, approximation_constants,
                            c0_girth4, c0_girth6, guarantee, prop13_l2_constant)
from girthcs.certify import CertificateReport, condition5_holds, verify_certificate
from girthcs.lpsolve import (LpProblem, LpSolution, RecoveryResult, basis_pursuit,
                             empirical_c0, nsp_constant, simplex)
from girthcs.tanner import INFINITE, LocalTree, MatrixProfile, girth, local_tree, \
    max_inner_product, profile

__version__ = "0.1.0"

"""Exact optimality certificates.

All checks run in the scalar type of their inputs (Fraction or QuadExt)
with zero tolerance.
"""
from exact.linalg import dot, matvec, squared_norm, transpose, vec_sub
from exact.scalars import sign
from invprob.results import KktCertificate


def correlations(A, y, x):
    """2 A^T (y - A x)."""
    residual = vec_sub(y, matvec(A, x))
    return [2 * dot(col, residual) for col in transpose(A)]


def kkt_check_lasso2(A, y, lam, x):
    if len(x) != len(A[0]):
        return KktCertificate(False, 'lasso2', lam, reason=f"minimizer has {len(x)} entries, expected {len(A[0])}")
    c = correlations(A, y, x)
    for i, (value, corr) in enumerate(zip(x, c)):
        s = sign(value)
        if s != 0:
            if corr != lam * s:
                return KktCertificate(False, 'lasso2', lam, index=i, correlations=c,
                                      reason=f"correlation {corr} != lambda * sign(x_{i}) = {lam * s}")
        elif sign(lam - corr) < 0 or sign(lam + corr) < 0:
            return KktCertificate(False, 'lasso2', lam, index=i, correlations=c,
                                  reason=f"|correlation {corr}| exceeds lambda {lam} at a zero entry")
    return KktCertificate(True, 'lasso2', lam, correlations=c)


def kkt_check_bp(A, y, epsilon, x, multiplier=None):
    """Certify a basis pursuit minimizer.

    Either x = 0 with ||y||^2 <= eps^2, or the constraint is active and x
    satisfies the lasso^2 conditions at the penalty ``multiplier`` (the
    inverse Lagrange multiplier of the constraint).
    """
    eps2 = epsilon * epsilon
    if all(sign(value) == 0 for value in x):
        if sign(squared_norm(y) - eps2) <= 0:
            return KktCertificate(True, 'bp')
        return KktCertificate(False, 'bp', reason="x = 0 is infeasible")
    residual2 = squared_norm(vec_sub(matvec(A, x), y))
    if sign(residual2 - eps2) != 0:
        return KktCertificate(False, 'bp', multiplier,
                              reason=f"constraint not active: residual^2 = {residual2}, eps^2 = {eps2}")
    if multiplier is None or sign(multiplier) < 0:
        return KktCertificate(False, 'bp', multiplier, reason="no non-negative multiplier given")
    certificate = kkt_check_lasso2(A, y, multiplier, x)
    certificate.problem = 'bp'
    return certificate

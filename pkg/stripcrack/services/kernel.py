"""
Improper-integral kernels of the strip crack problem.

rho0(s)    = int_0^inf [alpha^2 e^{-gamma s} / (alpha^2 - k0^2) - e^{-alpha s}] d alpha
R(x, s)    = sgn(s) int_0^inf [alpha e^{-gamma |s|} / (alpha^2 - k0^2) - e^{-alpha |s|} / alpha] sin(alpha x) d alpha

Both are evaluated by Gauss-Legendre panels on [0, A] with adaptive bisection and
a cutoff A doubled until an analytic tail bound certifies the remainder.
"""
import math
import time
from functools import lru_cache
from itertools import groupby
from operator import itemgetter
from typing import Dict, Hashable, List, Optional, Tuple

import numpy as np
import structlog
from scipy.special import roots_legendre

from stripcrack.core.cache import KernelCache, kernel_cache
from stripcrack.core.exceptions import NonConvergenceError, UnsupportedRegimeError
from stripcrack.models.material import ComplexWaveParams, Regime
from stripcrack.models.quadrature import KernelEval, QuadratureSpec
from stripcrack.services.wave import wavenumber

logger = structlog.get_logger(__name__)

BLOCK_SIZE = 128
EPS = np.finfo(float).eps


@lru_cache(maxsize=32)
def _gauss_legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = roots_legendre(order)
    return nodes, weights


class KernelEvaluator:
    """Memoized evaluator of rho0 and the field kernel for one medium and one QuadratureSpec."""

    def __init__(
        self,
        wp: ComplexWaveParams,
        q: QuadratureSpec,
        cache: Optional[KernelCache] = None,
    ):
        if wp.regime is Regime.UNDAMPED:
            raise UnsupportedRegimeError(
                "Real positive k0^2 puts a pole on the integration path; "
                "only damped (G0 > 0) or static media are supported"
            )
        self.wp = wp
        self.q = q
        self.c = complex(wp.k0_sq)
        self.cache = cache if cache is not None else kernel_cache
        spec_key = tuple(sorted(q.model_dump().items()))
        self._namespaces: Dict[str, Hashable] = {
            kind: (self.c.real, self.c.imag, spec_key, kind) for kind in ("rho0", "field")
        }

    @property
    def is_static(self) -> bool:
        return self.wp.regime is Regime.STATIC

    def diagonal_limit(self) -> complex:
        """rho0(0) in closed form: i pi w / 2 with w^2 = k0^2, Im w > 0."""
        if self.is_static:
            return 0j
        return 0.5j * math.pi * wavenumber(self.wp)

    def tail_bound(self, cutoff: float, s, x: Optional[float] = None):
        """
        Bound on the integral discarded beyond alpha = cutoff.

        Valid for cutoff >= 10 |k0^2|^(1/2), where Re gamma >= 0.99 alpha. For the
        field kernel the sin(alpha x) factor is also integrated by parts once,
        which shrinks the bound by (s + 2 / cutoff) / (cutoff |x|) at large |x|.
        """
        s = np.asarray(s, dtype=float)
        bound = 2.0 * abs(self.c) * np.exp(-0.99 * cutoff * s) / cutoff
        if x is not None:
            if x == 0:
                return bound * 0.0
            by_parts = (s + 2.0 / cutoff) / (cutoff * abs(x))
            factor = np.minimum(min(1.0 / cutoff, abs(x)), by_parts)
            bound = bound * factor
        return bound

    # -- integrands ---------------------------------------------------------

    def _difference_integrand(self, alpha: np.ndarray, s: np.ndarray) -> np.ndarray:
        """alpha^2 e^{-gamma s}/gamma^2 - e^{-alpha s} without cancellation."""
        c = self.c
        g = np.sqrt(alpha * alpha - c)
        s = s.reshape((-1,) + (1,) * alpha.ndim)
        return np.exp(-alpha * s) * np.expm1(c * s / (g + alpha)) + c * np.exp(-g * s) / (g * g)

    def _integrand(self, alpha: np.ndarray, s: np.ndarray, x: Optional[float]) -> np.ndarray:
        values = self._difference_integrand(alpha, s)
        if x is not None:
            values = values * (np.sin(alpha * x) / alpha)
        return values

    # -- panel machinery ----------------------------------------------------

    def _breakpoints(self, cutoff: float, x: Optional[float]) -> np.ndarray:
        root = math.sqrt(abs(self.c))
        edges = [0.0]
        h = root / 4.0
        while h < 4.0 * root * (1 - 1e-12):
            edges.append(h)
            h *= math.sqrt(2.0)
        edges.append(4.0 * root)
        h = 8.0 * root
        while h < cutoff:
            edges.append(h)
            h *= 2.0
        edges.append(cutoff)
        edges = np.asarray(edges)

        if x is not None and x != 0:
            # at most one oscillation period per panel
            period = 2.0 * math.pi / abs(x)
            pieces = []
            for lo, hi in zip(edges[:-1], edges[1:]):
                count = max(1, int(math.ceil((hi - lo) / period)))
                pieces.append(np.linspace(lo, hi, count + 1)[:-1])
            pieces.append(edges[-1:])
            edges = np.concatenate(pieces)
        return edges

    def _panel_sums(self, lo, hi, s, x):
        """Per-panel Gauss sums on each whole panel and on its two halves."""
        nodes, weights = _gauss_legendre(self.q.panel_order)
        mid = 0.5 * (lo + hi)

        def rule(a, b):
            half = 0.5 * (b - a)
            alpha = (0.5 * (a + b))[:, None] + half[:, None] * nodes[None, :]
            contrib = self._integrand(alpha, s, x) * (half[:, None] * weights[None, :])
            return contrib.sum(axis=-1), np.abs(contrib).sum(axis=-1)

        whole, _ = rule(lo, hi)
        left, left_abs = rule(lo, mid)
        right, right_abs = rule(mid, hi)
        return whole, left + right, left_abs + right_abs

    def _choose_cutoff(self, s: float, x: Optional[float]) -> float:
        """Smallest doubled cutoff whose tail bound at s is below a quarter of abs_tol."""
        tail_target = 0.25 * self.q.abs_tol
        cutoff = max(self.q.initial_cutoff, 10.0 * math.sqrt(abs(self.c)))
        doublings = 0
        while float(self.tail_bound(cutoff, s, x)) > tail_target:
            doublings += 1
            if doublings > self.q.max_doublings:
                raise NonConvergenceError(
                    f"Tail bound not certified after {self.q.max_doublings} cutoff doublings",
                    s=s,
                    est_error=float(self.tail_bound(cutoff, s, x)),
                )
            cutoff *= 2.0
        return cutoff

    def _integrate_block(self, s: np.ndarray, x: Optional[float], cutoff: float) -> List[KernelEval]:
        """Integrate s values sharing one cutoff on a common panel layout."""
        q = self.q

        edges = self._breakpoints(cutoff, x)
        lo, hi = edges[:-1], edges[1:]
        if lo.size > q.max_panels:
            raise NonConvergenceError(
                f"Initial panel count {lo.size} exceeds max_panels={q.max_panels}",
                s=float(s.min()),
            )
        whole, halves, magnitude = self._panel_sums(lo, hi, s, x)
        err = np.abs(whole - halves)

        while True:
            values = halves.sum(axis=1)
            tol_s = np.maximum(q.abs_tol, q.rel_tol * np.abs(values))
            total = err.sum(axis=1)
            if np.all(total <= 0.7 * tol_s):
                break
            n_panels = lo.size
            flagged = np.any(err > 0.5 * tol_s[:, None] / n_panels, axis=0)
            if n_panels + int(flagged.sum()) > q.max_panels:
                worst = int(np.argmax(total / tol_s))
                raise NonConvergenceError(
                    f"Panel refinement exceeded max_panels={q.max_panels}",
                    s=float(s[worst]),
                    est_error=float(total[worst]),
                )
            split_mid = 0.5 * (lo[flagged] + hi[flagged])
            new_lo = np.concatenate([lo[flagged], split_mid])
            new_hi = np.concatenate([split_mid, hi[flagged]])
            w_new, h_new, m_new = self._panel_sums(new_lo, new_hi, s, x)
            keep = ~flagged
            lo = np.concatenate([lo[keep], new_lo])
            hi = np.concatenate([hi[keep], new_hi])
            whole = np.concatenate([whole[:, keep], w_new], axis=1)
            halves = np.concatenate([halves[:, keep], h_new], axis=1)
            magnitude = np.concatenate([magnitude[:, keep], m_new], axis=1)
            err = np.abs(whole - halves)

        tail = self.tail_bound(cutoff, s, x)
        roundoff = 50.0 * EPS * magnitude.sum(axis=1)
        est = err.sum(axis=1) + tail + roundoff

        bad = est > np.maximum(q.abs_tol, q.rel_tol * np.abs(values))
        if np.any(bad):
            worst = int(np.argmax(np.where(bad, est, -np.inf)))
            raise NonConvergenceError(
                "Kernel error estimate above tolerance",
                s=float(s[worst]),
                est_error=float(est[worst]),
            )

        logger.debug(
            "kernel_block",
            kind="field" if x is not None else "rho0",
            size=int(s.size),
            cutoff=cutoff,
            panels=int(lo.size),
        )
        return [
            KernelEval(value=complex(v), est_error=float(e), cutoff_used=cutoff, panels_used=int(lo.size))
            for v, e in zip(values, est)
        ]

    def _evaluate(self, kind: str, s_values: np.ndarray, x: Optional[float]) -> Dict[float, KernelEval]:
        """Fill the memo for the distinct positive s values and return them all."""
        namespace = self._namespaces[kind]
        distinct = np.unique(s_values)
        keys = [(x, float(v)) if x is not None else float(v) for v in distinct]
        found = self.cache.get_many(namespace, keys)
        missing = np.array(
            [float(v) for v, key in zip(distinct, keys) if key not in found], dtype=float
        )

        if missing.size:
            start = time.perf_counter()
            computed = []
            # missing is ascending, so values sharing a cutoff are contiguous
            cutoffs = [self._choose_cutoff(float(v), x) for v in missing]
            for cutoff, members in groupby(zip(missing, cutoffs), key=itemgetter(1)):
                group = np.array([v for v, _ in members], dtype=float)
                for i in range(0, group.size, BLOCK_SIZE):
                    block = group[i:i + BLOCK_SIZE]
                    evals = self._integrate_block(block, x, cutoff)
                    computed.extend(
                        ((x, float(v)) if x is not None else float(v), ev) for v, ev in zip(block, evals)
                    )
            self.cache.set_many(namespace, computed)
            # re-read so concurrent first fills resolve to one stored value
            stored = self.cache.get_many(namespace, [key for key, _ in computed])
            for key, ev in computed:
                found[key] = stored.get(key, ev)
            logger.info(
                "kernel_values_computed",
                kind=kind,
                count=int(missing.size),
                cutoff_groups=len(set(cutoffs)),
                seconds=round(time.perf_counter() - start, 3),
            )
        return {float(v): found[key] for v, key in zip(distinct, keys)}

    # -- public batch API ---------------------------------------------------

    def rho0_many(self, s) -> np.ndarray:
        """rho0 at every s >= 0 (array in, complex array out)."""
        s = np.asarray(s, dtype=float)
        if np.any(~np.isfinite(s)) or np.any(s < 0):
            raise ValueError("s must be finite and non-negative")
        out = np.zeros(s.shape, dtype=complex)
        if self.is_static or s.size == 0:
            return out
        table = self._evaluate("rho0", s.ravel(), None)
        flat = np.array([table[float(v)].value for v in s.ravel()], dtype=complex)
        return flat.reshape(s.shape)

    def rho0_eval(self, s: float) -> KernelEval:
        if not (math.isfinite(s) and s >= 0):
            raise ValueError("s must be finite and non-negative")
        if self.is_static:
            return KernelEval(value=0j, est_error=0.0, cutoff_used=0.0, panels_used=0)
        return self._evaluate("rho0", np.array([float(s)]), None)[float(s)]

    def regular_kernel_grid(self, y, eta) -> np.ndarray:
        """sgn(y - eta) rho0(|y - eta|) on the outer grid y x eta, zero on coincidences."""
        y = np.asarray(y, dtype=float)
        eta = np.asarray(eta, dtype=float)
        if np.any(np.abs(y) > 1) or np.any(np.abs(eta) > 1):
            raise ValueError("y and eta must lie in [-1, 1]")
        diff = y[:, None] - eta[None, :]
        grid = np.zeros(diff.shape, dtype=complex)
        off_diagonal = diff != 0
        grid[off_diagonal] = np.sign(diff[off_diagonal]) * self.rho0_many(np.abs(diff[off_diagonal]))
        return grid

    def field_edge_eval(self, x: float) -> KernelEval:
        """R(x, 0+) with its error certificate."""
        if not math.isfinite(x):
            raise ValueError("x must be finite")
        if self.is_static or x == 0:
            return KernelEval(value=0j, est_error=0.0, cutoff_used=0.0, panels_used=0)
        return self._evaluate("field", np.array([0.0]), float(x))[0.0]

    def field_kernel_edge(self, x: float) -> complex:
        """One-sided limit R(x, 0+); the field kernel jumps by twice this across s = 0."""
        return self.field_edge_eval(x).value

    def field_kernel_many(self, x: float, s_signed) -> np.ndarray:
        """R(x, s) for one x and many signed s."""
        s_signed = np.asarray(s_signed, dtype=float)
        if not math.isfinite(x) or np.any(~np.isfinite(s_signed)):
            raise ValueError("x and s must be finite")
        out = np.zeros(s_signed.shape, dtype=complex)
        if self.is_static or x == 0 or s_signed.size == 0:
            return out
        magnitude = np.abs(s_signed)
        positive = magnitude > 0
        if not np.any(positive):
            return out
        table = self._evaluate("field", magnitude[positive], float(x))
        out[positive] = np.sign(s_signed[positive]) * np.array(
            [table[float(v)].value for v in magnitude[positive]], dtype=complex
        )
        return out


def rho0(s: float, wp: ComplexWaveParams, q: QuadratureSpec) -> KernelEval:
    """Regular kernel magnitude rho0(s) with its error certificate."""
    return KernelEvaluator(wp, q).rho0_eval(s)


def regular_kernel(y: float, eta: float, wp: ComplexWaveParams, q: QuadratureSpec) -> complex:
    """sgn(y - eta) rho0(|y - eta|); zero when y == eta."""
    return complex(KernelEvaluator(wp, q).regular_kernel_grid([y], [eta])[0, 0])


def field_kernel(x: float, s_signed: float, wp: ComplexWaveParams, q: QuadratureSpec) -> complex:
    """Field kernel R(x, s) with s = y - eta."""
    return complex(KernelEvaluator(wp, q).field_kernel_many(x, [s_signed])[0])

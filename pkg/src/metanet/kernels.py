"""Hot numeric kernels: numba @njit with a pure-numpy fallback.

Set METANET_NUMBA=0 to skip JIT compilation. With the flag off, the
permutation-scoring batch runs a vectorized numpy implementation and the
MCMC sweep bodies run as plain Python; with it on (default when numba is
importable), the same scalar bodies are compiled with @njit. Both paths
consume pre-drawn random arrays, so chain trajectories are identical
either way.

Score model ids (batch scoring): 0 rapid Bernoulli entropy (bits), 1 sparse
Bernoulli entropy (bits), 2 Poisson SBM log-likelihood (nats), 3 Poisson
DCSBM log-likelihood (nats), 4 modularity, 5 exact Bernoulli entropy (bits),
6 multinomial DCSBM entropy (bits).

Chain objective ids (MCMC): 0 Bernoulli SBM log-likelihood (nats),
1 Poisson DCSBM log-likelihood (nats), 2 modularity.
"""

from __future__ import annotations

import math
import os

import numpy as np

LN2 = math.log(2.0)

SCORE_BERNOULLI_RAPID = 0
SCORE_BERNOULLI_SPARSE = 1
SCORE_POISSON_SBM = 2
SCORE_POISSON_DCSBM = 3
SCORE_MODULARITY = 4
SCORE_BERNOULLI_EXACT = 5
SCORE_MULTINOMIAL_DCSBM = 6

CHAIN_BERNOULLI = 0
CHAIN_DCSBM = 1
CHAIN_MODULARITY = 2


def _jit_requested() -> bool:
    flag = os.environ.get("METANET_NUMBA", "1").strip().lower()
    if flag in ("0", "false", "off", "no"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


JIT_ENABLED = _jit_requested()

if JIT_ENABLED:
    from numba import njit

    def _jit(f):
        return njit(cache=True, nogil=True)(f)
else:
    def _jit(f):
        return f


def active_backend() -> str:
    return "numba" if JIT_ENABLED else "numpy"


# ---------------------------------------------------------------------------
# scalar kernel bodies (compiled with @njit unless METANET_NUMBA=0)
# ---------------------------------------------------------------------------

@_jit
def _block_m_loop(edge_u, edge_v, assign, k):
    m = np.zeros((k, k), dtype=np.int64)
    for e in range(edge_u.shape[0]):
        r = assign[edge_u[e]]
        s = assign[edge_v[e]]
        m[r, s] += 1
        m[s, r] += 1
    return m


@_jit
def _score_from_blocks(n, m, e_total, model_id):
    """Score a partition from block counts alone (models 0..5)."""
    k = n.shape[0]
    if model_id == 4:  # modularity
        e2 = 2.0 * e_total
        q = 0.0
        for r in range(k):
            q += m[r, r] / e2
            kap_r = 0.0
            for s in range(k):
                kap_r += m[r, s]
            q -= (kap_r / e2) ** 2
        return q
    acc = 0.0
    if model_id == 0 or model_id == 5:  # Bernoulli entropy, rapid or exact
        for r in range(k):
            for s in range(k):
                nn = float(n[r]) * float(n[s])
                if nn <= 0.0:
                    continue
                mm = float(m[r, s])
                om = mm / nn
                if model_id == 0:
                    if om > 0.0:
                        acc -= mm * math.log(om)
                    if om < 1.0:
                        acc -= (nn - mm) * math.log(1.0 - om)
                else:
                    # exact pair grouping: 1/2 [sum_rs n_r n_s h + sum_r n_r h]
                    h = 0.0
                    if 0.0 < om < 1.0:
                        h = -om * math.log(om) - (1.0 - om) * math.log(1.0 - om)
                    acc += nn * h
                    if r == s:
                        acc += float(n[r]) * h
        return 0.5 * acc / LN2
    if model_id == 1 or model_id == 2:  # sparse Bernoulli / Poisson SBM
        for r in range(k):
            for s in range(k):
                mm = float(m[r, s])
                nn = float(n[r]) * float(n[s])
                if mm > 0.0 and nn > 0.0:
                    acc += mm * math.log(mm / nn)
        if model_id == 1:
            return (e_total - 0.5 * acc) / LN2
        return 0.5 * acc
    if model_id == 3:  # Poisson DCSBM log-likelihood, nats
        for r in range(k):
            kap_r = 0.0
            for s in range(k):
                kap_r += m[r, s]
            for s in range(k):
                mm = float(m[r, s])
                if mm > 0.0:
                    kap_s = 0.0
                    for t in range(k):
                        kap_s += m[s, t]
                    acc += mm * math.log(mm / (kap_r * kap_s))
        return 0.5 * acc
    return np.nan


@_jit
def _multinomial_entropy(n_plus, s_log, t_inv, u_inv2, m, e_total):
    """Grouped multinomial DCSBM entropy (bits) from per-group degree sums.

    n_plus[r] counts positive-degree nodes in group r; s_log, t_inv, u_inv2
    are the per-group sums of ln k_i, 1/k_i, 1/k_i^2 over those nodes. Bins
    are unordered node pairs i<j with p_ij != 0.
    """
    k = n_plus.shape[0]
    two_m = 2.0 * e_total
    kap = np.zeros(k, dtype=np.float64)
    for r in range(k):
        for s in range(k):
            kap[r] += m[r, s]
    b = 0.0
    sum_log_p = 0.0
    sum_inv_p = 0.0
    for r in range(k):
        if m[r, r] > 0.0 and n_plus[r] > 1:
            npr = float(n_plus[r])
            pairs = 0.5 * npr * (npr - 1.0)
            b += pairs
            base = math.log(m[r, r]) - math.log(two_m) - 2.0 * math.log(kap[r])
            sum_log_p += (npr - 1.0) * s_log[r] + pairs * base
            sum_inv_p += (two_m * kap[r] * kap[r] / m[r, r]) * 0.5 * (t_inv[r] ** 2 - u_inv2[r])
        for s in range(r + 1, k):
            if m[r, s] > 0.0 and n_plus[r] > 0 and n_plus[s] > 0:
                pairs = float(n_plus[r]) * float(n_plus[s])
                b += pairs
                base = math.log(m[r, s]) - math.log(two_m) - math.log(kap[r]) - math.log(kap[s])
                sum_log_p += n_plus[s] * s_log[r] + n_plus[r] * s_log[s] + pairs * base
                sum_inv_p += (two_m * kap[r] * kap[s] / m[r, s]) * t_inv[r] * t_inv[s]
    h_nats = 0.5 * ((b - 1.0) * math.log(2.0 * math.pi * e_total * math.e) + sum_log_p)
    h_nats += (3.0 * b - 2.0 - sum_inv_p) / (12.0 * e_total)
    return h_nats / LN2


@_jit
def _batch_scores_loop(edge_u, edge_v, deg, assigns, k, e_total, model_id,
                       w_pos, w_log, w_inv, w_inv2, out):
    n_rep, n_nodes = assigns.shape
    m = np.zeros((k, k), dtype=np.int64)
    n = np.zeros(k, dtype=np.int64)
    n_plus = np.zeros(k, dtype=np.int64)
    s_log = np.zeros(k, dtype=np.float64)
    t_inv = np.zeros(k, dtype=np.float64)
    u_inv2 = np.zeros(k, dtype=np.float64)
    for p in range(n_rep):
        for r in range(k):
            n[r] = 0
            for s in range(k):
                m[r, s] = 0
        for e in range(edge_u.shape[0]):
            r = assigns[p, edge_u[e]]
            s = assigns[p, edge_v[e]]
            m[r, s] += 1
            m[s, r] += 1
        for i in range(n_nodes):
            n[assigns[p, i]] += 1
        if model_id == 6:
            for r in range(k):
                n_plus[r] = 0
                s_log[r] = 0.0
                t_inv[r] = 0.0
                u_inv2[r] = 0.0
            for i in range(n_nodes):
                r = assigns[p, i]
                if w_pos[i] > 0.0:
                    n_plus[r] += 1
                    s_log[r] += w_log[i]
                    t_inv[r] += w_inv[i]
                    u_inv2[r] += w_inv2[i]
            out[p] = _multinomial_entropy(n_plus, s_log, t_inv, u_inv2,
                                          m.astype(np.float64), e_total)
        else:
            out[p] = _score_from_blocks(n, m, e_total, model_id)
    return out


@_jit
def _block_pair_term(mm, denom, chain_model):
    """One (r, s) summand of a chain objective (before the global 1/2)."""
    if chain_model == 0:  # Bernoulli log-likelihood
        if denom <= 0.0:
            return 0.0
        om = mm / denom
        t = 0.0
        if om > 0.0:
            t += mm * math.log(om)
        if om < 1.0:
            t += (denom - mm) * math.log(1.0 - om)
        return t
    # DCSBM log-likelihood
    if mm > 0.0 and denom > 0.0:
        return mm * math.log(mm / denom)
    return 0.0


@_jit
def _chain_objective(n, m, kap, e_total, chain_model):
    k = n.shape[0]
    if chain_model == 2:
        e2 = 2.0 * e_total
        q = 0.0
        for r in range(k):
            q += m[r, r] / e2 - (kap[r] / e2) ** 2
        return q
    acc = 0.0
    for r in range(k):
        for s in range(k):
            if chain_model == 0:
                acc += _block_pair_term(float(m[r, s]), float(n[r]) * float(n[s]), 0)
            else:
                acc += _block_pair_term(float(m[r, s]), float(kap[r]) * float(kap[s]), 1)
    return 0.5 * acc


@_jit
def _move_delta(n, m, kap, e_total, a, b, cnt, ki, chain_model):
    """Objective change from moving one node of degree ki from group a to b.

    cnt[s] is the node's edge count into group s, computed before the move.
    """
    k = n.shape[0]
    if chain_model == 2:
        e2 = 2.0 * e_total
        old = m[a, a] / e2 - (kap[a] / e2) ** 2 + m[b, b] / e2 - (kap[b] / e2) ** 2
        new = ((m[a, a] - 2.0 * cnt[a]) / e2 - ((kap[a] - ki) / e2) ** 2
               + (m[b, b] + 2.0 * cnt[b]) / e2 - ((kap[b] + ki) / e2) ** 2)
        return new - old
    na_new = float(n[a]) - 1.0
    nb_new = float(n[b]) + 1.0
    kapa_new = float(kap[a]) - ki
    kapb_new = float(kap[b]) + ki
    row_old = 0.0
    row_new = 0.0
    for t in range(k):
        m_at = float(m[a, t])
        m_bt = float(m[b, t])
        if t == a:
            m_at_new = m_at - 2.0 * cnt[a]
            m_bt_new = m_bt + cnt[a] - cnt[b]  # cell (b, a)
        elif t == b:
            m_at_new = m_at + cnt[a] - cnt[b]  # cell (a, b)
            m_bt_new = m_bt + 2.0 * cnt[b]
        else:
            m_at_new = m_at - cnt[t]
            m_bt_new = m_bt + cnt[t]
        if chain_model == 0:
            n_t = float(n[t])
            n_t_new = na_new if t == a else (nb_new if t == b else n_t)
            row_old += _block_pair_term(m_at, float(n[a]) * n_t, 0)
            row_old += _block_pair_term(m_bt, float(n[b]) * n_t, 0)
            row_new += _block_pair_term(m_at_new, na_new * n_t_new, 0)
            row_new += _block_pair_term(m_bt_new, nb_new * n_t_new, 0)
        else:
            kap_t = float(kap[t])
            kap_t_new = kapa_new if t == a else (kapb_new if t == b else kap_t)
            row_old += _block_pair_term(m_at, float(kap[a]) * kap_t, 1)
            row_old += _block_pair_term(m_bt, float(kap[b]) * kap_t, 1)
            row_new += _block_pair_term(m_at_new, kapa_new * kap_t_new, 1)
            row_new += _block_pair_term(m_bt_new, kapb_new * kap_t_new, 1)
    # rows a and b double-count the 2x2 block {a,b}x{a,b} against cols a, b
    if chain_model == 0:
        dup_old = (_block_pair_term(float(m[a, a]), float(n[a]) * float(n[a]), 0)
                   + 2.0 * _block_pair_term(float(m[a, b]), float(n[a]) * float(n[b]), 0)
                   + _block_pair_term(float(m[b, b]), float(n[b]) * float(n[b]), 0))
        dup_new = (_block_pair_term(float(m[a, a]) - 2.0 * cnt[a], na_new * na_new, 0)
                   + 2.0 * _block_pair_term(float(m[a, b]) + cnt[a] - cnt[b], na_new * nb_new, 0)
                   + _block_pair_term(float(m[b, b]) + 2.0 * cnt[b], nb_new * nb_new, 0))
    else:
        dup_old = (_block_pair_term(float(m[a, a]), float(kap[a]) * float(kap[a]), 1)
                   + 2.0 * _block_pair_term(float(m[a, b]), float(kap[a]) * float(kap[b]), 1)
                   + _block_pair_term(float(m[b, b]), float(kap[b]) * float(kap[b]), 1))
        dup_new = (_block_pair_term(float(m[a, a]) - 2.0 * cnt[a], kapa_new * kapa_new, 1)
                   + 2.0 * _block_pair_term(float(m[a, b]) + cnt[a] - cnt[b], kapa_new * kapb_new, 1)
                   + _block_pair_term(float(m[b, b]) + 2.0 * cnt[b], kapb_new * kapb_new, 1))
    old = 2.0 * row_old - dup_old
    new = 2.0 * row_new - dup_new
    return 0.5 * (new - old)


@_jit
def _apply_move(n, m, kap, a, b, cnt, ki):
    k = n.shape[0]
    for t in range(k):
        c = cnt[t]
        if c != 0:
            m[a, t] -= c
            m[t, a] -= c
            m[b, t] += c
            m[t, b] += c
    n[a] -= 1
    n[b] += 1
    kap[a] -= ki
    kap[b] += ki


@_jit
def _neighbor_counts(indptr, indices, assign, i, cnt):
    for t in range(cnt.shape[0]):
        cnt[t] = 0
    for e in range(indptr[i], indptr[i + 1]):
        cnt[assign[indices[e]]] += 1


@_jit
def _track_best(l_base, q, psi, assign, z, best_assign, best_z, best_state):
    l_neo = l_base + q * psi
    if l_neo > best_state[0] or (l_neo == best_state[0] and q < best_state[2]):
        best_state[0] = l_neo
        best_state[1] = l_base
        best_state[2] = q
        for j in range(assign.shape[0]):
            best_assign[j] = assign[j]
            best_z[j] = z[j]


@_jit
def _neo_sweeps(indptr, indices, deg, k, e_total, chain_model,
                assign, z, meta, psi, do_z,
                n, m, kap, l_base, q,
                u_label, u_lacc, u_zprop, u_zacc,
                best_assign, best_z, best_state):
    """Run u_label.shape[0] MCMC sweeps in place; track the best state seen.

    best_state holds (L_neo, L_base, q); ties in L_neo prefer smaller q.
    Returns the current (l_base, q) after the final sweep.
    """
    n_nodes = assign.shape[0]
    n_sweeps = u_label.shape[0]
    cnt = np.zeros(k, dtype=np.int64)
    for sw in range(n_sweeps):
        # (a) group moves for free nodes
        if k >= 2:
            for i in range(n_nodes):
                if z[i] == 0:
                    continue
                a = assign[i]
                t = int(u_label[sw, i] * (k - 1))
                if t >= k - 1:
                    t = k - 2
                b = t if t < a else t + 1
                _neighbor_counts(indptr, indices, assign, i, cnt)
                delta = _move_delta(n, m, kap, e_total, a, b, cnt, deg[i], chain_model)
                if delta >= 0.0 or u_lacc[sw, i] < math.exp(delta):
                    _apply_move(n, m, kap, a, b, cnt, deg[i])
                    assign[i] = b
                    l_base += delta
                    _track_best(l_base, q, psi, assign, z, best_assign, best_z, best_state)
        # (b) fair-coin state flips
        if do_z == 1:
            for i in range(n_nodes):
                want_red = u_zprop[sw, i] < 0.5
                if want_red and z[i] == 0:
                    if psi >= 0.0 or u_zacc[sw, i] < math.exp(psi):
                        z[i] = 1
                        q += 1
                        _track_best(l_base, q, psi, assign, z, best_assign, best_z, best_state)
                elif (not want_red) and z[i] == 1:
                    a = assign[i]
                    b = meta[i]
                    dl = 0.0
                    if a != b:
                        _neighbor_counts(indptr, indices, assign, i, cnt)
                        dl = _move_delta(n, m, kap, e_total, a, b, cnt,
                                         deg[i], chain_model)
                    delta = dl - psi
                    if delta >= 0.0 or u_zacc[sw, i] < math.exp(delta):
                        if a != b:
                            _apply_move(n, m, kap, a, b, cnt, deg[i])
                            assign[i] = b
                            l_base += dl
                        z[i] = 0
                        q -= 1
                        _track_best(l_base, q, psi, assign, z, best_assign, best_z, best_state)
    return l_base, q


@_jit
def _greedy_polish(indptr, indices, deg, k, e_total, chain_model,
                   assign, z, meta, psi, do_z, n, m, kap, l_base, q):
    """Deterministic local search until no single move improves L_neo."""
    n_nodes = assign.shape[0]
    cnt = np.zeros(k, dtype=np.int64)
    tol = 1e-10
    for _ in range(200):
        improved = False
        for i in range(n_nodes):
            if z[i] == 1 and k >= 2:
                a = assign[i]
                _neighbor_counts(indptr, indices, assign, i, cnt)
                best_b = a
                best_delta = 0.0
                for b in range(k):
                    if b == a:
                        continue
                    delta = _move_delta(n, m, kap, e_total, a, b, cnt,
                                        deg[i], chain_model)
                    if delta > best_delta + tol:
                        best_delta = delta
                        best_b = b
                if best_b != a:
                    _apply_move(n, m, kap, a, best_b, cnt, deg[i])
                    assign[i] = best_b
                    l_base += best_delta
                    improved = True
            if do_z == 1:
                if z[i] == 0:
                    if psi > tol:
                        z[i] = 1
                        q += 1
                        improved = True
                else:
                    a = assign[i]
                    b = meta[i]
                    dl = 0.0
                    if a != b:
                        _neighbor_counts(indptr, indices, assign, i, cnt)
                        dl = _move_delta(n, m, kap, e_total, a, b, cnt,
                                         deg[i], chain_model)
                    if dl - psi > tol:
                        if a != b:
                            _apply_move(n, m, kap, a, b, cnt, deg[i])
                            assign[i] = b
                            l_base += dl
                        z[i] = 0
                        q -= 1
                        improved = True
        if not improved:
            break
    return l_base, q


# ---------------------------------------------------------------------------
# vectorized numpy fallback for the batch scorer
# ---------------------------------------------------------------------------

def _batch_block_counts_numpy(edge_u, edge_v, assigns, k):
    n_rep = assigns.shape[0]
    rows = np.arange(n_rep)[:, None]
    m = np.zeros((n_rep, k * k), dtype=np.float64)
    if edge_u.shape[0]:
        lu = assigns[:, edge_u]
        lv = assigns[:, edge_v]
        np.add.at(m, (rows, lu * k + lv), 1.0)
        np.add.at(m, (rows, lv * k + lu), 1.0)
    m = m.reshape(n_rep, k, k)
    n = np.zeros((n_rep, k), dtype=np.float64)
    np.add.at(n, (rows, assigns), 1.0)
    return m, n


def _batch_scores_numpy(edge_u, edge_v, deg, assigns, k, e_total, model_id,
                        w_pos, w_log, w_inv, w_inv2, out):
    m, n = _batch_block_counts_numpy(edge_u, edge_v, assigns, k)
    nn = n[:, :, None] * n[:, None, :]
    diag = np.arange(k)
    with np.errstate(divide="ignore", invalid="ignore"):
        if model_id in (SCORE_BERNOULLI_RAPID, SCORE_BERNOULLI_EXACT):
            om = np.where(nn > 0, m / np.where(nn > 0, nn, 1.0), 0.0)
            t1 = np.where(om > 0, m * np.log(np.where(om > 0, om, 1.0)), 0.0)
            t2 = np.where(om < 1, (nn - m) * np.log(np.where(om < 1, 1.0 - om, 1.0)), 0.0)
            if model_id == SCORE_BERNOULLI_RAPID:
                out[:] = -0.5 * (t1 + t2).sum(axis=(1, 2)) / LN2
            else:
                h = -np.where(nn > 0, (t1 + t2) / np.where(nn > 0, nn, 1.0), 0.0)
                out[:] = 0.5 * ((h * nn).sum(axis=(1, 2))
                                + (h[:, diag, diag] * n).sum(axis=1)) / LN2
        elif model_id in (SCORE_BERNOULLI_SPARSE, SCORE_POISSON_SBM):
            t = np.where((m > 0) & (nn > 0),
                         m * np.log(np.where(m > 0, m, 1.0) / np.where(nn > 0, nn, 1.0)),
                         0.0)
            s = 0.5 * t.sum(axis=(1, 2))
            if model_id == SCORE_BERNOULLI_SPARSE:
                out[:] = (e_total - s) / LN2
            else:
                out[:] = s
        elif model_id == SCORE_POISSON_DCSBM:
            kap = m.sum(axis=2)
            kk = kap[:, :, None] * kap[:, None, :]
            t = np.where(m > 0,
                         m * np.log(np.where(m > 0, m, 1.0) / np.where(kk > 0, kk, 1.0)),
                         0.0)
            out[:] = 0.5 * t.sum(axis=(1, 2))
        elif model_id == SCORE_MODULARITY:
            e2 = 2.0 * e_total
            kap = m.sum(axis=2)
            out[:] = (m[:, diag, diag] / e2 - (kap / e2) ** 2).sum(axis=1)
        elif model_id == SCORE_MULTINOMIAL_DCSBM:
            rows = np.arange(assigns.shape[0])[:, None]
            acc = np.zeros((assigns.shape[0], 4, k), dtype=np.float64)
            for j, w in enumerate((w_pos, w_log, w_inv, w_inv2)):
                np.add.at(acc[:, j, :], (rows, assigns), np.broadcast_to(w, assigns.shape))
            for p in range(assigns.shape[0]):
                out[p] = _multinomial_entropy(
                    acc[p, 0].astype(np.int64), acc[p, 1], acc[p, 2], acc[p, 3],
                    m[p], e_total)
        else:
            raise ValueError(f"unknown score model id {model_id}")
    return out


def _block_m_numpy(edge_u, edge_v, assign, k):
    m = np.zeros((k, k), dtype=np.int64)
    if edge_u.shape[0]:
        np.add.at(m, (assign[edge_u], assign[edge_v]), 1)
        np.add.at(m, (assign[edge_v], assign[edge_u]), 1)
    return m


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------

def block_m(edges: np.ndarray, assign: np.ndarray, k: int) -> np.ndarray:
    if len(edges) == 0:
        return np.zeros((k, k), dtype=np.int64)
    edge_u = np.ascontiguousarray(edges[:, 0])
    edge_v = np.ascontiguousarray(edges[:, 1])
    if JIT_ENABLED:
        return _block_m_loop(edge_u, edge_v, assign, k)
    return _block_m_numpy(edge_u, edge_v, assign, k)


def score_from_blocks(n: np.ndarray, m: np.ndarray, e_total: int, model_id: int) -> float:
    return float(_score_from_blocks(n.astype(np.int64), m.astype(np.int64),
                                    float(e_total), model_id))


def node_degree_weights(deg: np.ndarray):
    """Per-node weights feeding the multinomial entropy group sums."""
    pos = deg > 0
    safe = np.where(pos, deg, 1).astype(np.float64)
    return (pos.astype(np.float64), np.where(pos, np.log(safe), 0.0),
            np.where(pos, 1.0 / safe, 0.0), np.where(pos, 1.0 / safe ** 2, 0.0))


def multinomial_entropy_grouped(n_plus, s_log, t_inv, u_inv2, m, e_total) -> float:
    return float(_multinomial_entropy(
        np.asarray(n_plus, dtype=np.int64), np.asarray(s_log, dtype=np.float64),
        np.asarray(t_inv, dtype=np.float64), np.asarray(u_inv2, dtype=np.float64),
        np.asarray(m, dtype=np.float64), float(e_total)))


def batch_scores(edges: np.ndarray, deg: np.ndarray, assigns: np.ndarray,
                 k: int, e_total: int, model_id: int,
                 force_backend: str | None = None) -> np.ndarray:
    """Score one partition per row of assigns; rows are independent."""
    assigns = np.ascontiguousarray(assigns, dtype=np.int64)
    out = np.empty(assigns.shape[0], dtype=np.float64)
    w_pos, w_log, w_inv, w_inv2 = node_degree_weights(deg)
    if len(edges):
        edge_u = np.ascontiguousarray(edges[:, 0])
        edge_v = np.ascontiguousarray(edges[:, 1])
    else:
        edge_u = np.empty(0, dtype=np.int64)
        edge_v = np.empty(0, dtype=np.int64)
    backend = force_backend or active_backend()
    fn = _batch_scores_loop if backend == "numba" else _batch_scores_numpy
    fn(edge_u, edge_v, deg.astype(np.int64), assigns, k, float(e_total),
       model_id, w_pos, w_log, w_inv, w_inv2, out)
    return out


def chain_objective(n, m, kap, e_total, chain_model) -> float:
    return float(_chain_objective(
        np.asarray(n, dtype=np.float64), np.asarray(m, dtype=np.float64),
        np.asarray(kap, dtype=np.float64), float(e_total), chain_model))


def neo_sweeps(*args):
    return _neo_sweeps(*args)


def greedy_polish(*args):
    return _greedy_polish(*args)

"""Hot loops of the SISO passes, jitted when numba is available.

Every kernel is a plain numpy function and works unchanged (only slower)
without numba. All Pauli indices here are raw bit codes (x bit 2j, z bit
2j+1); callers marshal public (I, X, Y, Z) distributions before entry.

Shared argument layout:
  pphys      (n_physical, 4) per-qubit physical priors
  plog       (N*k, 4) per-qubit logical priors
  sx_body    (N,) measured stabilizer x-patterns of body slices
  sx_term    (t,) same for terminal slices
  dst_body   (2^(n-k), 4^m, 4^k, 2^(n-k)) next memory state
  psym_body  same shape, emitted physical Pauli index in G_n
  dst_term   (2^n, 4^m, 2^n) terminal-slice next state
  psym_term  same shape, terminal emitted Pauli
Failure is reported as the 1-based slice whose message summed to zero,
or -1; raising happens in the caller.
"""

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


@njit(cache=True)
def _branch_metric(wv, pphys, base, n):
    for p in range(wv.shape[0]):
        v = 1.0
        for j in range(n):
            v *= pphys[base + j, (p >> (2 * j)) & 3]
        wv[p] = v


@njit(cache=True)
def _logical_metric(lamp, plog, base, k):
    for lam in range(lamp.shape[0]):
        v = 1.0
        for j in range(k):
            v *= plog[base + j, (lam >> (2 * j)) & 3]
        lamp[lam] = v


@njit(cache=True)
def forward_kernel(
    alpha0, pphys, plog, sx_body, sx_term,
    dst_body, psym_body, dst_term, psym_term, n, k, N, t,
):
    states = alpha0.shape[0]
    alphas = np.zeros((N + t, states))
    alphas[0] = alpha0
    wv = np.empty(1 << (2 * n))
    lamp = np.empty(1 << (2 * k))
    for i in range(1, N + t):
        prev = alphas[i - 1]
        cur = alphas[i]
        _branch_metric(wv, pphys, (i - 1) * n, n)
        if i <= N:
            _logical_metric(lamp, plog, (i - 1) * k, k)
            db = dst_body[sx_body[i - 1]]
            pb = psym_body[sx_body[i - 1]]
            for mu in range(states):
                a = prev[mu]
                if a == 0.0:
                    continue
                for lam in range(lamp.shape[0]):
                    al = a * lamp[lam]
                    if al == 0.0:
                        continue
                    for sz in range(db.shape[2]):
                        cur[db[mu, lam, sz]] += al * wv[pb[mu, lam, sz]]
        else:
            dt = dst_term[sx_term[i - 1 - N]]
            pt = psym_term[sx_term[i - 1 - N]]
            for mu in range(states):
                a = prev[mu]
                if a == 0.0:
                    continue
                for sz in range(dt.shape[1]):
                    cur[dt[mu, sz]] += a * wv[pt[mu, sz]]
        tot = cur.sum()
        if tot <= 0.0:
            return alphas, i
        cur /= tot
    return alphas, -1


@njit(cache=True)
def backward_kernel(
    beta_init, pphys, plog, sx_body, sx_term,
    dst_body, psym_body, dst_term, psym_term, n, k, N, t,
):
    states = beta_init.shape[0]
    betas = np.zeros((N + t + 1, states))
    betas[N + t] = beta_init
    wv = np.empty(1 << (2 * n))
    lamp = np.empty(1 << (2 * k))
    for i in range(N + t, 0, -1):
        nxt = betas[i]
        cur = betas[i - 1]
        _branch_metric(wv, pphys, (i - 1) * n, n)
        if i <= N:
            _logical_metric(lamp, plog, (i - 1) * k, k)
            db = dst_body[sx_body[i - 1]]
            pb = psym_body[sx_body[i - 1]]
            for mu in range(states):
                acc = 0.0
                for lam in range(lamp.shape[0]):
                    lv = lamp[lam]
                    if lv == 0.0:
                        continue
                    for sz in range(db.shape[2]):
                        acc += lv * wv[pb[mu, lam, sz]] * nxt[db[mu, lam, sz]]
                cur[mu] = acc
        else:
            dt = dst_term[sx_term[i - 1 - N]]
            pt = psym_term[sx_term[i - 1 - N]]
            for mu in range(states):
                acc = 0.0
                for sz in range(dt.shape[1]):
                    acc += wv[pt[mu, sz]] * nxt[dt[mu, sz]]
                cur[mu] = acc
        tot = cur.sum()
        if tot <= 0.0:
            return betas, i
        cur /= tot
    return betas, -1


@njit(cache=True)
def local_kernel(
    alphas, betas, pphys, plog, sx_body, sx_term,
    dst_body, psym_body, dst_term, psym_term, n, k, N, t,
):
    states = alphas.shape[1]
    nlam = 1 << (2 * k)
    post_log = np.zeros((N * k, 4))
    post_phys = np.zeros((n * (N + t), 4))
    post_mem = np.zeros(states)
    wv = np.empty(1 << (2 * n))
    lamp = np.empty(nlam)
    joint = np.empty(nlam)
    for i in range(1, N + t + 1):
        prev = alphas[i - 1]
        nxt = betas[i]
        base = (i - 1) * n
        _branch_metric(wv, pphys, base, n)
        slice_mass = 0.0
        if i <= N:
            _logical_metric(lamp, plog, (i - 1) * k, k)
            joint[:] = 0.0
            for mu in range(states):
                a = prev[mu]
                if a == 0.0:
                    continue
                for lam in range(nlam):
                    al = a * lamp[lam]
                    if al == 0.0:
                        continue
                    for sz in range(dst_body.shape[3]):
                        d = dst_body[sx_body[i - 1], mu, lam, sz]
                        p = psym_body[sx_body[i - 1], mu, lam, sz]
                        mass = al * wv[p] * nxt[d]
                        if mass == 0.0:
                            continue
                        joint[lam] += mass
                        for j in range(n):
                            post_phys[base + j, (p >> (2 * j)) & 3] += mass
                        if i == N + t:
                            post_mem[d] += mass
            slice_mass = joint.sum()
            for j in range(k):
                for lam in range(nlam):
                    post_log[(i - 1) * k + j, (lam >> (2 * j)) & 3] += joint[lam]
        else:
            for mu in range(states):
                a = prev[mu]
                if a == 0.0:
                    continue
                for sz in range(dst_term.shape[2]):
                    d = dst_term[sx_term[i - 1 - N], mu, sz]
                    p = psym_term[sx_term[i - 1 - N], mu, sz]
                    mass = a * wv[p] * nxt[d]
                    if mass == 0.0:
                        continue
                    slice_mass += mass
                    for j in range(n):
                        post_phys[base + j, (p >> (2 * j)) & 3] += mass
                    if i == N + t:
                        post_mem[d] += mass
        if slice_mass <= 0.0:
            return post_log, post_phys, post_mem, i
    return post_log, post_phys, post_mem, -1

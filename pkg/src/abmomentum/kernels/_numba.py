"""numba-compiled loop kernels; see ``_numpy`` for the reference semantics."""
import math

import numpy as np
from numba import njit

TWO_PI = 2.0 * math.pi


@njit(cache=True)
def two_slit_amplitude(x, inv_a, d, half_phase):
    out = np.empty(x.shape[0], dtype=np.complex128)
    kick = complex(math.cos(half_phase), math.sin(half_phase))
    for i in range(x.shape[0]):
        xl = x[i] + d
        xr = x[i] - d
        out[i] = (np.exp(-(xl * xl) * inv_a) / kick
                  + np.exp(-(xr * xr) * inv_a) * kick)
    return out


@njit(cache=True)
def moving_max(values, half_width):
    # monotone deque of indices over the window [i - w, i + w]
    n = values.shape[0]
    out = np.empty(n, dtype=np.float64)
    dq = np.empty(n, dtype=np.int64)
    head = 0
    tail = 0
    nxt = 0
    for i in range(n):
        hi = min(n - 1, i + half_width)
        while nxt <= hi:
            while tail > head and values[dq[tail - 1]] <= values[nxt]:
                tail -= 1
            dq[tail] = nxt
            tail += 1
            nxt += 1
        while dq[head] < i - half_width:
            head += 1
        out[i] = values[dq[head]]
    return out


@njit(cache=True)
def trig_eval(c_re, c_im, freqs, s):
    out = np.empty(s.shape[0], dtype=np.float64)
    for j in range(s.shape[0]):
        acc = 0.0
        for k in range(freqs.shape[0]):
            theta = (TWO_PI * freqs[k]) * s[j]
            acc += c_re[k] * math.cos(theta) - c_im[k] * math.sin(theta)
        out[j] = acc
    return out


@njit(cache=True)
def _panel_sums(ax, ay, bx, by, cx, cy, radius, flux, nodes, weights, panels):
    dx = bx - ax
    dy = by - ay
    r_min2 = radius * radius
    total = 0.0
    for p in range(panels):
        for q in range(nodes.shape[0]):
            t = (p + 0.5 * (nodes[q] + 1.0)) / panels
            px = ax + dx * t - cx
            py = ay + dy * t - cy
            r2 = px * px + py * py
            if r2 < r_min2:
                r2 = r_min2
            total += weights[q] * (flux / TWO_PI) * (-py * dx + px * dy) / r2
    return total * 0.5 / panels


@njit(cache=True)
def segment_integral(ax, ay, bx, by, cx, cy, radius, flux, nodes, weights,
                     tol, max_level):
    previous = _panel_sums(ax, ay, bx, by, cx, cy, radius, flux, nodes, weights, 1)
    for level in range(1, max_level + 1):
        current = _panel_sums(ax, ay, bx, by, cx, cy, radius, flux, nodes,
                              weights, 2 ** level)
        if abs(current - previous) < tol:
            return current, level
        previous = current
    return previous, max_level


@njit(cache=True)
def winding_angle(vx, vy, cx, cy):
    n = vx.shape[0]
    total = 0.0
    for i in range(n):
        j = (i + 1) % n
        ux = vx[i] - cx
        uy = vy[i] - cy
        wx = vx[j] - cx
        wy = vy[j] - cy
        total += math.atan2(ux * wy - uy * wx, ux * wx + uy * wy)
    return total

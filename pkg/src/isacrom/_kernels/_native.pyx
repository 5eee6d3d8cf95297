# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot-loop kernels; semantics mirror ``pure.py`` exactly."""

from libc.math cimport cos, exp, log, pow, sin, sqrt

import numpy as np

cdef unsigned long long GOLDEN = 0x9E3779B97F4A7C15ULL
cdef double U53 = 1.0 / 9007199254740992.0  # 2^-53


cdef inline unsigned long long mix64(unsigned long long z) nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline unsigned long long step(unsigned long long base,
                                    unsigned long long i) nogil:
    return mix64(base + (i + 1ULL) * GOLDEN)


cdef inline double unit(unsigned long long v) nogil:
    return <double>((v >> 11) + 1ULL) * U53


cdef inline long long pois_invert(double u, double[::1] cdf) nogil:
    cdef long long k = 0
    cdef long long n = cdf.shape[0]
    while k < n and u > cdf[k]:
        k += 1
    return k


cdef inline double clutter_sum(unsigned long long kc, double[::1] cdf) nogil:
    cdef long long k = pois_invert(unit(step(kc, 0ULL)), cdf)
    cdef double total = 0.0
    cdef long long j
    for j in range(1, k + 1):
        total += -log(unit(step(kc, <unsigned long long>j)))
    return total


def mc_count_hits(double[::1] pois_cdf, double mark_scale, double noise,
                  double eta, double s0_det, double s0_exp_mean,
                  unsigned long long seed, long long trials,
                  long long start_trial=0):
    cdef long long count = 0
    cdef long long i
    cdef unsigned long long k1, kc
    cdef double val
    with nogil:
        for i in range(start_trial, start_trial + trials):
            k1 = step(seed, <unsigned long long>i)
            kc = step(k1, 0ULL)
            val = mark_scale * clutter_sum(kc, pois_cdf)
            val = val + s0_det
            if s0_exp_mean > 0.0:
                val = val + s0_exp_mean * (-log(unit(step(step(k1, 1ULL), 0ULL))))
            else:
                val = val + 0.0
            val = val + noise
            if val >= eta:
                count += 1
    return count


def mc_sample_clutter(double[::1] pois_cdf, double mark_scale,
                      unsigned long long seed, long long n,
                      long long start_trial=0):
    out = np.empty(n)
    cdef double[::1] ov = out
    cdef long long i
    cdef unsigned long long k1
    with nogil:
        for i in range(n):
            k1 = step(seed, <unsigned long long>(start_trial + i))
            ov[i] = mark_scale * clutter_sum(step(k1, 0ULL), pois_cdf)
    return out


def mc_count_hits_pr(double[::1] pois_cdf, double coef, double r_lo,
                     double r_hi, double two_alpha, double noise, double eta,
                     double s0_det, double s0_exp_mean,
                     unsigned long long seed, long long trials,
                     long long start_trial=0):
    cdef long long count = 0
    cdef long long i, j, k
    cdef unsigned long long k1, kc, kr
    cdef double val, e, r
    cdef double span = r_hi - r_lo
    with nogil:
        for i in range(start_trial, start_trial + trials):
            k1 = step(seed, <unsigned long long>i)
            kc = step(k1, 0ULL)
            kr = step(k1, 2ULL)
            k = pois_invert(unit(step(kc, 0ULL)), pois_cdf)
            val = 0.0
            for j in range(1, k + 1):
                e = -log(unit(step(kc, <unsigned long long>j)))
                r = r_lo + span * unit(step(kr, <unsigned long long>j))
                val += coef * e * pow(r, -two_alpha)
            val = val + s0_det
            if s0_exp_mean > 0.0:
                val = val + s0_exp_mean * (-log(unit(step(step(k1, 1ULL), 0ULL))))
            else:
                val = val + 0.0
            val = val + noise
            if val >= eta:
                count += 1
    return count


def cp_panel_block(double lam, double xs, double[::1] starts,
                   double[::1] widths, double[::1] glx, double[::1] glw):
    cdef long long n = starts.shape[0]
    cdef long long g = glx.shape[0]
    sums_arr = np.zeros(n)
    amax_arr = np.zeros(n)
    cdef double[::1] sums = sums_arr
    cdef double[::1] amax = amax_arr
    cdef double atom = exp(-lam)
    cdef long long p, i, m
    cdef double a, u, u2, denom, er, phase, re_psi, im_psi, theta
    cdef double acc, mag, half, quarter
    with nogil:
        for p in range(n):
            half = widths[p] * 0.5
            quarter = widths[p] * 0.25
            for m in range(2):
                a = starts[p] + m * half
                acc = 0.0
                for i in range(g):
                    u = a + (glx[i] + 1.0) * quarter
                    u2 = u * u
                    denom = 1.0 + u2
                    er = exp(-lam * u2 / denom)
                    phase = lam * u / denom
                    re_psi = er * cos(phase) - atom
                    im_psi = er * sin(phase)
                    theta = u * xs
                    acc += glw[i] * (im_psi * cos(theta) - re_psi * sin(theta)) / u
                    mag = sqrt(re_psi * re_psi + im_psi * im_psi)
                    if mag > amax[p]:
                        amax[p] = mag
                sums[p] += quarter * acc
    return sums_arr, amax_arr

#!/usr/bin/env python3
"""Derives the default absolute constant c of the sample-budget formula

    L = ceil((4 beta^2 c^2 sigma^2 / eps^2) * ln(4 D / delta'))

by inverting it against the reference budget L ~= 38.8e3 reported for the
SNW experiment (eps = 0.1, delta = 0.01, K = 206, beta = 1, sigma = 1, D = 2,
delta' = 2 delta / (K (K - 1))). The value printed here, rounded to four
decimals, is kCalibratedBudgetConstant in include/vopt/bandit.hpp.
"""
import math

EPS, DELTA, K, BETA, SIGMA, D = 0.1, 0.01, 206, 1.0, 1.0, 2
TARGET_L = 38.8e3

delta_prime = 2 * DELTA / (K * (K - 1))
log_term = math.log(4 * D / delta_prime)
c = math.sqrt(TARGET_L * EPS**2 / (4 * BETA**2 * SIGMA**2 * log_term))
c_rounded = round(c, 4)

def budget(eps, c_value):
    return math.ceil(4 * BETA**2 * c_value**2 * SIGMA**2 / eps**2 * log_term)

print(f"delta'            = {delta_prime:.6e}")
print(f"ln(4D/delta')     = {log_term:.6f}")
print(f"c (exact)         = {c:.8f}")
print(f"c (committed)     = {c_rounded:.4f}")
print(f"L(eps=0.1)        = {budget(0.1, c_rounded)}")
print(f"L(eps=0.01)       = {budget(0.01, c_rounded)}")

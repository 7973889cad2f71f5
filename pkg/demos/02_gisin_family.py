"""The n x n-settings inequality family and its game values.

The coefficient matrix has +1 where i + j <= n and -1 elsewhere; the game
asks for equal outputs on the +1 inputs and opposite outputs on the rest.
Classically the best winning probability is 3/4 (even n) or 3/4 + 1/(4 n^2)
(odd n); quantum strategies reach cos(pi/2n) / (n sin(pi/n)) + 1/2, which
decreases towards 1/2 + 1/pi ~ 0.8183 as n grows.
"""

import math

import bellgame as bg

print("n   classical C   enumerated   P_C^max      P_Q^max      closed form")
for n in range(2, 9):
    ineq = bg.gisin(n)
    game, _ = bg.bell_to_game(bg.correlation_to_weighted(ineq))
    classical = bg.classical_value(game)
    s_max, _ = bg.classical_bound(ineq)
    reconstructed = s_max - ineq.abs_coefficient_sum()
    xor = bg.xor_quantum_value(ineq)
    closed = bg.gisin_quantum_max(n)
    print(
        f"{n}   {ineq.classical_bound:>11.1f}   {reconstructed:>10.1f}"
        f"   {classical.p_max:.8f}   {xor.value:.8f}   {closed:.8f}"
    )

limit = 0.5 + 1.0 / math.pi
print(f"\nlarge-n limit of the quantum value: 1/2 + 1/pi = {limit:.8f}")
print(f"  at n = 100:     {bg.gisin_quantum_max(100):.8f}")
print(f"  at n = 10^6:    {bg.gisin_quantum_max(10**6):.8f}")

print("\nthe continuum version of the game replaces inputs by reals in [0,1]:")
for alpha, beta, oa, ob in ((0.3, 0.4, 1, 1), (0.7, 0.7, 1, -1), (0.5, 0.5, 1, -1)):
    verdict = "win " if bg.continuum_gisin_predicate(alpha, beta, oa, ob) else "lose"
    print(f"  alpha={alpha}, beta={beta}, outputs ({oa:+d}, {ob:+d}) -> {verdict}")

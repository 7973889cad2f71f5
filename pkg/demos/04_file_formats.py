"""The BELLSPEC text format: canonical serialization and diagnostics.

Everything the library works with (inequalities, games, strategies) has a
line-oriented text form.  Serialization is canonical, so equal values give
byte-identical files and parse/serialize round-trip exactly.
"""

import bellgame as bg

ineq = bg.gisin(3)
text = bg.serialize(ineq)
print("gisin(3) serialized:")
print(text)

again = bg.parse(text)
print(f"parse -> equal object: {again == ineq}")
print(f"serialize(parse(text)) byte-identical: {bg.serialize(again) == text}")

game, _ = bg.bell_to_game(bg.correlation_to_weighted(bg.chsh()))
print("\nthe CHSH game file:")
print(bg.serialize(game))

print("diagnostics carry line/column and machine-readable codes:")
broken = text.replace("coeff 1 1 1", "coeff 1 1 maybe")
try:
    bg.parse(broken)
except bg.BellSpecSyntaxError as err:
    print(f"  syntax error: {err}")

unnormalized = bg.serialize(game).replace("prob 1 1 0.25", "prob 1 1 0.15")
try:
    bg.parse(unnormalized)
except bg.ValidationError as err:
    print(f"  validation codes: {err.codes}")

strategy = bg.DeterministicStrategy(((1, -1), (1, 1)))
print("\na deterministic strategy file:")
print(bg.serialize(strategy))

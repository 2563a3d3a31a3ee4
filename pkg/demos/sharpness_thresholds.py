"""How sharp does a measurement have to be before quantumness shows?

Bisects the sharpness eta (maximizing over everything else at each step) for
each dynamics/bias regime. Channel dynamics tolerate much blunter
measurements than unitary dynamics, and biasing the effects (alpha = 1 - eta)
pushes the threshold all the way down to 1/2.
"""

from lglab.explorer import eta_threshold

REGIMES = [
    ("L", "unitary-unbiased"),
    ("V", "unitary-unbiased"),
    ("L", "channel-unbiased"),
    ("V", "channel-unbiased"),
    ("L", "channel-biased"),
    ("V", "channel-biased"),
]

print("critical sharpness for a Leggett-Garg violation (takes ~half a minute):")
for objective, regime in REGIMES:
    value = eta_threshold(objective, regime)
    print(f"  {objective}  {regime:18s} eta_c = {value:.4f}")
print("\nsqrt(2/3) = 0.8165 is exact for the first row (L = 1.5 eta^2).")

from fractions import Fraction


def rational_roots_sample(rng, w, distinct=True, span=6):
    out = []
    while len(out) < w:
        z = Fraction(rng.randint(-span, span), rng.randint(1, 3))
        if distinct and z in out:
            continue
        out.append(z)
    return out

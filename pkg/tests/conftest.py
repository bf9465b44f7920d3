from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

# closed forms, restated here so tests do not lean on package constants
P9 = "z^8-3*z^6+2*z^4+3*z^2-4"
Q9 = "z^9+z^8-z^7-z^6+z^3+z^2+2*z+2"  # (z+1)(z^8-z^6+z^2+2)
Q11 = "z^11+z^10+2/3*z^9+2/3*z^8+4/3*z^7+4/3*z^6+z^5+z^4+2/3*z^3+2/3*z^2+1/3*z+1/3"


def tm(i):
    return bin(i).count("1") % 2

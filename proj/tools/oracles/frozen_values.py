"""Extended-precision reference values frozen into tests/unit.

Independent of the C++ code: every quantity is rebuilt here from its
defining formula with mpmath at 40 digits.
"""
import mpmath as mp

mp.mp.dps = 40
I = mp.mpc(0, 1)


def show(name, z):
    z = mp.mpc(z)
    print(f"{name}: {mp.nstr(z.real, 20)} {mp.nstr(z.imag, 20)}")


# j1 by its power series z sum (-z^2/2)^k / (k! (2k+3)!!)
def j1_series(z):
    return z * mp.nsum(lambda k: (-z * z / 2) ** k / (mp.factorial(k) * mp.fac2(2 * k + 3)), [0, mp.inf])


show("j1(0.5)", j1_series(mp.mpf("0.5")))

# closed form (1/z + i/z^2) e^{iz}
z = mp.mpc("1", "0.5")
show("h1_printed(1+0.5i)", (1 / z + I / z ** 2) * mp.exp(I * z))


# Mie quotients with the standard outgoing h1 = j1 + i y1
def sph_jn1(x):
    return mp.sqrt(mp.pi / (2 * x)) * mp.besselj(1.5, x)


def sph_yn1(x):
    return mp.sqrt(mp.pi / (2 * x)) * mp.bessely(1.5, x)


def std_h1(x):
    return sph_jn1(x) + I * sph_yn1(x)


def bracket(f, x):
    return mp.diff(lambda t: t * f(t), x)


def mie(eps, z0):
    z = mp.sqrt(eps) * z0
    j0, jb0 = sph_jn1(z0), bracket(sph_jn1, z0)
    h0, hb0 = std_h1(z0), bracket(std_h1, z0)
    h, hb = std_h1(z), bracket(std_h1, z)
    c = (h0 * hb - eps * h * hb0) / (eps * h * jb0 - j0 * hb)
    d = (j0 * hb0 - h0 * jb0) / (j0 * hb - eps * h * jb0)
    return c, d


for eps, z0 in [(mp.mpc("2.25", "0.1"), mp.mpf("0.05")), (mp.mpc("3", "0.2"), mp.mpf("0.01"))]:
    c, d = mie(eps, z0)
    show(f"C({eps},{z0})", c)
    show(f"D({eps},{z0})", d)

# P int f(x)/(0 - x) dx with f = 1/(x - c) on [-50, 50]:
# the pole at 0 is a principal value, the one at c is off-axis.
c = mp.mpc("0.5", "0.3")
L = 50
g = lambda x: 1 / ((0 - x) * (x - c))
# symmetric-pair form: g(x) + g(-x) is regular at 0
pv = mp.quad(lambda x: g(x) + g(-x), [0, 1, L])
show("pv(1/(x-c)) on [-50,50]", pv)

# noise amplitude at resonance, wp = 1.3, wr = 0.8, gamma = 0.07
wp, wr, ga = mp.mpf("1.3"), mp.mpf("0.8"), mp.mpf("0.07")
eps = 1 + wp ** 2 / (wr ** 2 - wr ** 2 - I * ga * wr)
show("noise_amplitude", mp.sqrt(eps.imag / mp.pi))

# dyadic Green tensor, standard solution (I + grad grad / k^2) e^{ikr}/(4 pi r)
epsg = mp.mpc("2.25", "0.1")
w = mp.mpf("1.2")
k = mp.sqrt(epsg) * w
rf = [mp.mpf("0.4"), mp.mpf("-1.1"), mp.mpf("0.7")]
rs = [mp.mpf("0.1"), mp.mpf("0.2"), mp.mpf("-0.3")]


def scalar(x, y, zz):
    r = mp.sqrt(x ** 2 + y ** 2 + zz ** 2)
    return mp.exp(I * k * r) / (4 * mp.pi * r)


d = [rf[i] - rs[i] for i in range(3)]
for a, b in [(0, 0), (0, 1), (1, 2), (2, 2)]:
    def partial(a_, b_):
        def f(*x):
            return scalar(*x)
        order = [0, 0, 0]
        order[a_] += 1
        order[b_] += 1
        return mp.diff(f, tuple(d), tuple(order))
    val = (scalar(*d) if a == b else 0) + partial(a, b) / k ** 2
    show(f"G[{a}{b}]", val)

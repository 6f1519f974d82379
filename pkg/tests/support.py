"""Model builders and brute-force oracles shared by the tests."""
import math
import random

import numpy as np

from sqkit import HC, HoppingAmplitude, Model


def chain_model(n, t=1.0, onsite=None, construct=True):
    model = Model()
    for i in range(n):
        if onsite is not None:
            model.add_amplitude(HoppingAmplitude(onsite, [i], [i]))
        if i + 1 < n:
            model.add_amplitude(HoppingAmplitude(t, [i + 1], [i]), True)
    if n == 1 and onsite is None:
        model.add_amplitude(HoppingAmplitude(0.0, [0], [0]))
    if construct:
        model.construct()
    return model


def single_site(eps):
    model = Model()
    model.add_amplitude(HoppingAmplitude(eps, [0], [0]))
    model.construct()
    return model


def rectangle_model(nx, ny, t=1.0, spin=False):
    model = Model()
    spins = (0, 1) if spin else (None,)
    for x in range(nx):
        for y in range(ny):
            for s in spins:
                tail = () if s is None else (s,)
                if x + 1 < nx:
                    model << HoppingAmplitude(t, (x + 1, y) + tail, (x, y) + tail) + HC
                if y + 1 < ny:
                    model << HoppingAmplitude(t, (x, y + 1) + tail, (x, y) + tail) + HC
                if nx == 1 and ny == 1:
                    model << HoppingAmplitude(0.0, (x, y) + tail, (x, y) + tail)
    model.construct()
    return model


def chain_energies(n, t=1.0):
    """Closed-form open-chain spectrum ``2 t cos(k pi / (n + 1))``, ascending."""
    return np.sort([2 * t * math.cos(k * math.pi / (n + 1)) for k in range(1, n + 1)])


def random_leaves(rng, count):
    """Distinct concrete indices drawn from three coexisting structures."""
    leaves = set()
    while len(leaves) < count:
        kind = rng.randrange(3)
        if kind == 0:
            leaves.add((0, rng.randrange(4000), rng.randrange(2)))
        elif kind == 1:
            leaves.add((1, rng.randrange(60), rng.randrange(60), rng.randrange(2)))
        else:
            leaves.add((2, rng.randrange(8000)))
    return sorted(leaves)


def random_amplitude_specs(rng, n_leaves, n_hops=None, dyadic=False, duplicates=False):
    """Random Hermitian model as ``(value, to, from, hc)`` tuples.

    Every leaf gets a real onsite term so all indices belong to the basis.
    Without ``duplicates`` no (to, from) pair occurs twice.
    """
    leaves = random_leaves(rng, n_leaves)
    if n_hops is None:
        n_hops = n_leaves

    def value(real_only=False):
        if dyadic:
            re, im = rng.randint(-64, 64) / 8, rng.randint(-64, 64) / 8
        else:
            re, im = rng.uniform(-1, 1), rng.uniform(-1, 1)
        return complex(re, 0.0 if real_only else im)

    specs = [(value(real_only=True), leaf, leaf, False) for leaf in leaves]
    seen = set()
    for _ in range(n_hops if len(leaves) > 1 else 0):
        a, b = rng.sample(leaves, 2)
        if not duplicates and ((a, b) in seen or (b, a) in seen):
            continue
        seen.add((a, b))
        specs.append((value(), a, b, True))
    if duplicates:
        for _ in range(max(1, n_leaves // 4)):
            v, to, frm, hc = rng.choice(specs)
            specs.append((v, to, frm, hc))
    return specs


def model_from_specs(specs, construct=True):
    model = Model()
    for value, to, frm, hc in specs:
        model.add_amplitude(HoppingAmplitude(value, to, frm), hc)
    if construct:
        model.construct()
    return model


def random_model(seed, n_leaves=20, **kwargs):
    return model_from_specs(random_amplitude_specs(random.Random(seed), n_leaves, **kwargs))


def brute_force_dense(model):
    """Accumulate every iterated amplitude into a dense matrix one by one."""
    n = model.basis_size
    h = np.zeros((n, n), dtype=complex)
    for amp in model.iterate_amplitudes():
        h[model.basis_index_of(amp.to_index), model.basis_index_of(amp.from_index)] += amp.value
    return h

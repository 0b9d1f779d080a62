"""Small named systems used in examples and golden tests."""

from .model import CersSpec, FaceSpec


def chain(sizes, turns=()) -> CersSpec:
    """Even ring chain ``F1 - F2 - ... - Fn``.

    ``turns[k]`` is the attachment index of face ``k+2`` on face ``k+1``;
    for the first link any index works since the root has no parent edge.
    """
    sizes = list(sizes)
    turns = list(turns)
    if len(turns) < len(sizes) - 1:
        turns = [1] + turns if len(turns) == len(sizes) - 2 else turns
    faces = [FaceSpec("F1", sizes[0])]
    for k in range(1, len(sizes)):
        faces.append(FaceSpec(f"F{k + 1}", sizes[k], f"F{k}", turns[k - 1]))
    return CersSpec(tuple(faces))


def hexagon() -> CersSpec:
    return CersSpec((FaceSpec("F1", 6),))


def naphthalene() -> CersSpec:
    return chain([6, 6], [3])


def anthracene() -> CersSpec:
    return chain([6, 6, 6], [3, 3])


def phenanthrene(mirror: bool = False) -> CersSpec:
    return chain([6, 6, 6], [3, 4 if mirror else 2])


def hexagon_octagon() -> CersSpec:
    """Naphthalene with the second ring's free segment grown by two edges."""
    return chain([6, 8], [3])

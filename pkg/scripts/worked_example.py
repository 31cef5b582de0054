#!/usr/bin/env python3
"""Walk through the rank-4 worked example from the test suite.

Computes the level-1 rescaled image of the point (1, 2, 4) three ways
(direct evaluation, flattening followed by the recovered linear matrix,
per-coordinate counting-function formula) and prints the image cone of
its chain cone under the level-2 map.
"""

import random
from fractions import Fraction as F

from drinfan.cones import Cone
from drinfan.points import ClassPoint
from drinfan.xi import (_image_cone, delta_tilde, linearize_xi,
                        pi_eval, pi_family_eval, xi_eval_coords)


def main():
    coords = [F(1), F(2), F(4)]
    print(f"point: {coords}")

    way1 = xi_eval_coords(2, 1, coords)
    print(f"direct level-1 image:        {way1}")

    sigma = Cone.from_ineqs(
        [[1, 0, 0], [-2, 1, 0], [0, -1, 1], [0, 2, -1]], n=3)
    p = ClassPoint.from_coords(coords)
    flat = pi_eval(2, 2, sigma, p)
    print(f"flattened point:             {flat}")
    mat = linearize_xi(2, sigma, 2, 1, random.Random("worked-example"))
    print(f"recovered matrix:            {mat}")
    way2 = tuple(sum(row[j] * flat[j] for j in range(3)) for row in mat)
    print(f"matrix applied to flattened: {way2}")

    way3 = tuple(pi_family_eval(2, 1, i, i, p) + delta_tilde(2, p, i)
                 for i in (1, 2, 3))
    print(f"coordinate formula:          {way3}")

    assert way1 == way2 == way3
    img = _image_cone(2, 2, sigma)
    print(f"level-2 image cone rays:     {sorted(img.rays())}")


if __name__ == "__main__":
    main()

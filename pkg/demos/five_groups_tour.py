"""A quick tour of the five kinematical groups at n = 2.

One element of each group is built from the same rotation and the same
boost direction, so the differences in block structure are easy to see:
where the mixing entries land depends entirely on sigma.
"""

import numpy as np

from kinematica.classify import CaseLabel
from kinematica.groups import boost_closed_form, k_element, membership

np.set_printoptions(precision=4, suppress=True)

theta = 0.35
R = np.array([[np.cos(theta), -np.sin(theta)],
              [np.sin(theta), np.cos(theta)]])
k = k_element(R, 1)
b = np.array([0.6, 0.0])

print("shared rotation block (eps = +1):")
print(k)

cases = [
    ("Lorentz    (sigma = 1)", CaseLabel.LORENTZ, 1.0),
    ("Galilei    (sigma = 0)", CaseLabel.GALILEI, 0.0),
    ("Orthogonal (sigma = -1)", CaseLabel.ORTHOGONAL, -1.0),
    ("Carroll    (sigma = inf)", CaseLabel.CARROLL, np.inf),
]

for title, case, sigma in cases:
    a = k @ boost_closed_form(b, sigma)
    print()
    print(title)
    print(a)
    print("member of its own group:", membership(a, case, sigma))
    # each group element fails the test of every other boost structure
    others = [c for _, c, _ in cases if c is not case]
    rejected = []
    for other in others:
        s = {CaseLabel.LORENTZ: 1.0, CaseLabel.ORTHOGONAL: -1.0}.get(other)
        rejected.append(not membership(a, other, s))
    print("rejected by the other three:", all(rejected))

print()
print("Aristotle (no boosts at all): the rotation block alone")
print(k)
print("member:", membership(k, CaseLabel.ARISTOTLE))
print("a boosted element is not:",
      not membership(k @ boost_closed_form(b, 1.0), CaseLabel.ARISTOTLE))

# Products stay inside each group; here is the Galilei case, where the
# bottom row is exactly (0, 0, 1) no matter how many factors pile up.
g1 = k @ boost_closed_form(np.array([0.2, -0.1]), 0.0)
g2 = k @ boost_closed_form(np.array([-0.5, 0.3]), 0.0)
print()
print("product of two Galilei elements:")
print(g1 @ g2)
print("still Galilei:", membership(g1 @ g2, CaseLabel.GALILEI))

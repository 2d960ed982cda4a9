"""Frozen twist tables: name -> (curve word, images, inverse images).

Generated by ``derive_genus2()`` (genus 2) and ``derive_chain(3)`` (genus 3)
in ``bandmodel``; the test suite re-derives and compares.  Do not edit.
"""

TABLES = {
    2: {
        't11': (
            (-2,),
            [(1, 2), (2,), (3,), (4,)],
            [(1, -2), (2,), (3,), (4,)],
        ),
        't12': (
            (2, 4, 3, -4, -3),
            [(1, 4, 3, -4, -3, 2), (-2, 3, 4, -3, -4, 2, 4, 3, -4, -3, 2), (-2, 3, 4, -3, -4, 3, 4, 3, -4, -3, 2), (-2, 3, 4, -3, 4, 3, -4, -3, 2)],
            [(1, -2, 3, 4, -3, -4), (4, 3, -4, -3, 2, 3, 4, -3, -4), (4, 3, -4, -3, 2, 3, -2, 3, 4, -3, -4), (4, 3, -4, -3, 2, 4, -2, 3, 4, -3, -4)],
        ),
        't2': (
            (1,),
            [(1,), (2, -1), (3,), (4,)],
            [(1,), (2, 1), (3,), (4,)],
        ),
        't3': (
            (-2, -4),
            [(1, 4, 2), (-2, -4, 2, 4, 2), (-2, -4, 2, 4, 3, 4, 2), (-2, 4, 2)],
            [(1, -2, -4), (4, 2, -4), (4, 2, -4, -2, 3, -2, -4), (4, 2, 4, -2, -4)],
        ),
        't4': (
            (3,),
            [(1,), (2,), (3,), (4, -3)],
            [(1,), (2,), (3,), (4, 3)],
        ),
        't5': (
            (-4,),
            [(1,), (2,), (3, 4), (4,)],
            [(1,), (2,), (3, -4), (4,)],
        ),
    },
    3: {
        't11': (
            (2, -1, -2, 3, 4, -3),
            [(1,), (2, -1, -2, 3, 4, -3, 2), (2, -1, -2, 3, 4), (4,), (5,), (6,)],
            [(1,), (3, -4, -3, 2, 1), (3, -4, -3, 2, 1, -2, 3), (4,), (5,), (6,)],
        ),
        't12': (
            (-4, 5, 6, -5, -6, 1),
            [(1, -4, 5, 6, -5, -6, 1, 6, 5, -6, -5, 4, -1), (1, -4, 5, 6, -5, -6, -1, 6, 5, -6, -5, 4, 2, 6, 5, -6, -5, 4, -1), (1, -4, 5, 6, -5, -6, -1, 6, 5, -6, -5, 4, 3, 6, 5, -6, -5, 4, -1), (1, -4, 5, 6, -5, -6, 4, 6, 5, -6, -5, 4, -1), (1, -4, 5, 6, -5, -6, 5, 6, 5, -6, -5, 4, -1), (1, -4, 5, 6, -5, 6, 5, -6, -5, 4, -1)],
            [(6, 5, -6, -5, 4, 1, -4, 5, 6, -5, -6), (6, 5, -6, -5, 4, -1, -4, 5, 6, -5, -6, 1, 2, 1, -4, 5, 6, -5, -6), (6, 5, -6, -5, 4, -1, -4, 5, 6, -5, -6, 1, 3, 1, -4, 5, 6, -5, -6), (6, 5, -6, -5, 4, -1, 4, 1, -4, 5, 6, -5, -6), (6, 5, -6, -5, 4, -1, 5, 1, -4, 5, 6, -5, -6), (6, 5, -6, -5, 4, -1, 6, 1, -4, 5, 6, -5, -6)],
        ),
        't2': (
            (-2,),
            [(1, 2), (2,), (3,), (4,), (5,), (6,)],
            [(1, -2), (2,), (3,), (4,), (5,), (6,)],
        ),
        't3': (
            (-1, -2, 3, 4),
            [(1, -4, -3, 2, 1), (-1, -2, 3, 4, 2), (-1, -2, 3, 4, 3), (-3, 2, 1), (5,), (6,)],
            [(-2, 3, 4), (-4, -3, 2, 1, 2), (-4, -3, 2, 1, 3), (4, -1, -2, 3, 4), (5,), (6,)],
        ),
        't4': (
            (-4,),
            [(1,), (2,), (3, 4), (4,), (5,), (6,)],
            [(1,), (2,), (3, -4), (4,), (5,), (6,)],
        ),
        't5': (
            (-3, 2, 6),
            [(1, 6, -3, 2), (-2, 3, -6, 2, 6, -3, 2), (-2, 3, -6, 3, 6, -3, 2), (-2, 3, -6, -3, 2, 6, 4, 6, -3, 2), (-2, 3, -6, -3, 2, 6, 5, 6, -3, 2), (-2, 3, 6, -3, 2)],
            [(1, -2, 3, -6), (6, -3, 2, 3, -6), (6, -3, 2, 3, -2, 3, -6), (6, -3, 2, -6, -2, 3, 4, -2, 3, -6), (6, -3, 2, -6, -2, 3, 5, -2, 3, -6), (6, -3, 2, 6, -2, 3, -6)],
        ),
        't6': (
            (5,),
            [(1,), (2,), (3,), (4,), (5,), (6, -5)],
            [(1,), (2,), (3,), (4,), (5,), (6, 5)],
        ),
        't7': (
            (-6,),
            [(1,), (2,), (3,), (4,), (5, 6), (6,)],
            [(1,), (2,), (3,), (4,), (5, -6), (6,)],
        ),
    },
}

"""Shared golden data for the test suite.

GOLDEN_TABLE_* hold the published 6-decimal cell densities the build must
reproduce to within 5e-6.  REFERENCE_* hold 30-digit values computed with an
independent high-precision script (closed zeta forms for k = 2, library
prime-zeta plus exact box sums for k = 3), frozen here as oracles.
"""

import pytest

GOLDEN_TABLE_2 = {
    (0, 0): 0.049227, (0, 1): 0.107920, (0, 2): 0.079380, (0, 3): 0.030530,
    (0, 4): 0.007444, (0, 5): 0.001278,
    (1, 1): 0.158761, (1, 2): 0.091591, (1, 3): 0.029777, (1, 4): 0.006393,
    (1, 5): 0.000991,
    (2, 2): 0.044666, (2, 3): 0.012786, (2, 4): 0.002478, (2, 5): 0.000352,
    (3, 3): 0.003304, (3, 4): 0.000588, (3, 5): 0.000077,
    (4, 4): 0.000097, (4, 5): 0.000012,
    (5, 5): 0.000001,
}

GOLDEN_TABLE_3 = {
    (0, 0): 0.000146, (0, 1): 0.000898, (0, 2): 0.002413, (0, 3): 0.003899,
    (0, 4): 0.004360, (0, 5): 0.003654,
    (1, 1): 0.004826, (1, 2): 0.011698, (1, 3): 0.017443, (1, 4): 0.018274,
    (1, 5): 0.014504,
    (2, 2): 0.026165, (2, 3): 0.036549, (2, 4): 0.036261, (2, 5): 0.027472,
    (3, 3): 0.048348, (3, 4): 0.045787, (3, 5): 0.033318,
    (4, 4): 0.041647, (4, 5): 0.029247,
    (5, 5): 0.019896,
}

GOLDEN_TABLES = {2: GOLDEN_TABLE_2, 3: GOLDEN_TABLE_3}

# 30-digit reference values (independent script; see module docstring)
REFERENCE = {
    "P_2(1)": "1.17325431251955413823708984044",
    "P_2(2)": "0.18156494901025691256939973416",
    "P_2(3)": "0.0525934895482646848881100326415",
    "P_2(8)": "0.000246026930453777256968562684541",
    "P_3(1)": "3.65926612250065694127743110891",
    "P_3(2)": "0.398105028048410820538154908534",
    "P_3(3)": "0.114576315025302288937661068255",
    "P_3(8)": "0.000720702146129669997140834044113",
    "C_2": "0.0492272730092412771280194395251",
    "C_3": "0.000146352836245950301214880201959",
    "a_2,1": "0.10792054355786835009171708771",
    "a_2,2": "0.079380653129410064093719006816",
    "a_2,3": "0.0305304151093236913808207222328",
    "a_2,6": "0.000165238240308213775558057883419",
    "a_2,10": "0.00000000562632256448926827508778532072",
    "a_3,1": "0.000898954913393338300095420554776",
    "a_3,2": "0.00241318469443338350579042780722",
    "a_3,3": "0.00389944540611754470216088051182",
    "a_3,6": "0.00241740774215039667175552332275",
    "a_3,10": "0.0000789558836107555485455756335255",
    "d_2,0": "0.275965511407718981112319752475",
    "d_2,1": "0.395565215396236288211828683112",
    "d_2,2": "0.231299167354828379832590791901",
    "d_2,3": "0.077074272223364066667341114258",
    "d_3,0": "0.0200375956179512025504920137545",
    "d_3,1": "0.084806202320633468385327993365",
    "d_3,2": "0.171014563321717356370704572588",
    "d_3,3": "0.220239555929766750371172780953",
    "F_2(3)": "2.994063575121796328920859",
    "F_3(3)": "32.81485580531415526394399",
    "prime_zeta(2)": "0.452247420041065498506543364832",
}

MEMBERS_EMPTY_2_40 = [3, 6, 12, 23, 26, 34]


@pytest.fixture
def golden_tables():
    return GOLDEN_TABLES


@pytest.fixture
def reference():
    return REFERENCE

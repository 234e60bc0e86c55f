"""Tests for slot modules, annihilators and primitive ideals."""

import itertools

import pytest

from gammalab.services.audit import AuditStatus
from gammalab.services.errors import CapacityError, UsageError
from gammalab.services.radicals import Side, is_prime
from gammalab.services.representations import (
    ModuleStructure,
    annihilators,
    audit_representation_theorems,
    enumerate_modules,
    is_simple,
    module_homomorphisms,
    primitive_ideals,
    quotient_module,
    regular_module,
    submodules,
    validate_module,
)

MODULE_ADDITIONS = {
    2: ([[0, 1], [1, 0]], [[0, 1], [1, 1]]),
}


def zero_module(base, slot=2):
    return ModuleStructure.from_rules(base, slot, 1, lambda x, y: 0, lambda gammas, word: 0)


def and_module(base, slot=2):
    """Two-element module under OR with the product of the letters as action."""
    return ModuleStructure.from_rules(
        base, slot, 2, max, lambda gammas, word: int(all(word))
    )


def count_valid_modules(base, slot, k):
    """Count valid action tables by trying every value on every nonzero word."""
    nonzero_words = [
        (gammas, word)
        for gammas in base.gamma_tuples()
        for word in itertools.product(range(base.m), repeat=base.n)
        if 0 not in word and word[slot - 1] < k
    ]
    total = 0
    for madd in MODULE_ADDITIONS[k]:
        for values in itertools.product(range(k), repeat=len(nonzero_words)):
            table = dict(zip(nonzero_words, values))
            mod = ModuleStructure.from_rules(
                base, slot, k,
                lambda x, y, madd=madd: madd[x][y],
                lambda gammas, word, table=table: table.get((gammas, word), 0),
            )
            total += validate_module(mod, stop_at_first=True).valid
    return total


class TestModuleStructure:
    """Tests for module construction."""

    def test_rejects_bad_slot(self, e2):
        """Should reject slots outside [1, n]."""
        with pytest.raises(UsageError):
            zero_module(e2, slot=4)

    def test_rejects_bad_action_shape(self, e2):
        """Should reject action tables of the wrong size."""
        with pytest.raises(UsageError, match="action table"):
            ModuleStructure(e2, 2, 2, [[0, 1], [1, 1]], [0] * 3)

    def test_act_reads_module_slot(self, e2):
        """Should place the module element at the module slot."""
        mod = and_module(e2)
        assert mod.act(0, (1, 1, 1)) == 1
        assert mod.act(0, (1, 0, 1)) == 0


class TestValidateModule:
    """Tests for module axiom checks."""

    def test_zero_module(self, e4):
        """Should accept the one-element module."""
        assert validate_module(zero_module(e4)).valid

    def test_and_module(self, e2):
        """Should accept the AND action over OR."""
        assert validate_module(and_module(e2)).valid

    @pytest.mark.parametrize("slot", [1, 2, 3])
    def test_regular_module(self, e2, slot):
        """Should accept the base acting on itself."""
        assert validate_module(regular_module(e2, slot)).valid

    def test_absorption_violation(self, e2):
        """Should flag a nonzero action on the module zero."""
        mod = ModuleStructure.from_rules(e2, 2, 2, max, lambda gammas, word: 1)
        report = validate_module(mod)
        assert report.first("M4") is not None


class TestEnumerateModules:
    """Tests for module enumeration."""

    def test_single_element(self, e2):
        """Should find only the zero module for k_max = 1."""
        result = enumerate_modules(e2, 2, 1)
        assert len(result.modules) == 1
        assert result.modules[0].is_zero_action

    @pytest.mark.parametrize("name", ["e2", "e4"])
    def test_matches_unpruned_count(self, registry, name):
        """Should count exactly the valid tables found without pruning."""
        base = registry.resolve(name)
        result = enumerate_modules(base, 2, 2)
        assert result.valid_count == 1 + count_valid_modules(base, 2, 2)

    def test_emits_valid_modules(self, e4):
        """Should emit only modules passing validation."""
        for mod in enumerate_modules(e4, 2, 2).modules:
            assert validate_module(mod, stop_at_first=True).valid

    def test_carrier_limit(self, e2):
        """Should refuse carriers beyond the limit."""
        with pytest.raises(CapacityError):
            enumerate_modules(e2, 2, 4, carrier_limit=3)

    def test_bad_slot(self, e2):
        """Should reject slots beyond the arity."""
        with pytest.raises(UsageError):
            enumerate_modules(e2, 5, 1)


class TestSubmodulesAndSimplicity:
    """Tests for submodules and simple modules."""

    def test_zero_module(self, e2):
        """Should have only {0} and not be simple."""
        mod = zero_module(e2)
        assert submodules(mod) == [(0,)]
        assert not is_simple(mod)

    def test_and_module(self, e2):
        """Should be simple with submodules {0} and {0,1}."""
        mod = and_module(e2)
        assert submodules(mod) == [(0,), (0, 1)]
        assert is_simple(mod)

    def test_regular_module(self, e2):
        """Should be simple over E2."""
        assert is_simple(regular_module(e2, 2))

    def test_zero_action_not_simple(self, e2):
        """Should not count a two-element module with zero action as simple, though its submodules are trivial."""
        mod = ModuleStructure.from_rules(e2, 2, 2, max, lambda gammas, word: 0)
        assert submodules(mod) == [(0,), (0, 1)]
        assert annihilators(mod).two_sided.is_full
        assert not is_simple(mod)


class TestAnnihilators:
    """Tests for annihilator sets."""

    def test_zero_module(self, e4):
        """Should be the carrier for the zero module."""
        result = annihilators(zero_module(e4))
        assert result.two_sided.is_full
        assert result.left.is_full and result.right.is_full

    def test_and_module(self, e2):
        """Should be {0} for the AND module."""
        assert annihilators(and_module(e2)).two_sided.members == (0,)

    def test_regular_module_over_e4(self, e4):
        """Should be {0} for E4 acting on itself."""
        assert annihilators(regular_module(e4, 2)).two_sided.members == (0,)

    def test_two_sided_inside_one_sided(self, e4):
        """Should keep the two-sided annihilator inside both one-sided ones."""
        for mod in enumerate_modules(e4, 2, 2).modules:
            result = annihilators(mod)
            assert result.two_sided.issubset(result.left)
            assert result.two_sided.issubset(result.right)


class TestPrimitiveIdeals:
    """Tests for primitive ideals."""

    def test_e2_contains_zero(self, e2):
        """Should find {0} witnessed by a simple module."""
        result = primitive_ideals(e2, 2, 2)
        assert (0,) in [ideal.members for ideal in result.ideals]
        witness = dict((ideal.members, mod) for ideal, mod in result.entries)[(0,)]
        assert is_simple(witness)

    def test_labelled_within_bound(self, e2):
        """Should label the result as bounded by k_max."""
        payload = primitive_ideals(e2, 2, 2).to_jsonable()
        assert payload["status"] == "within_bound"
        assert payload["k_max"] == 2

    def test_e1_has_none(self, e1):
        """Should find no primitive ideals on one element."""
        assert primitive_ideals(e1, 2, 2).ideals == []


class TestModuleMorphisms:
    """Tests for module homomorphisms and quotients."""

    def test_identity_endomorphism(self, e2):
        """Should find the identity on the AND module."""
        assert (0, 1) in list(module_homomorphisms(and_module(e2), and_module(e2)))

    def test_collapse_to_zero_module(self, e2):
        """Should map everything to 0 in the zero module."""
        assert list(module_homomorphisms(and_module(e2), zero_module(e2))) == [(0, 0)]

    def test_quotient_by_full_congruence(self, e2):
        """Should give the zero module."""
        quotient = quotient_module(and_module(e2), [(0, 1)])
        assert quotient.k == 1
        assert validate_module(quotient).valid


class TestRepresentationAudit:
    """Tests for the representation audit."""

    @pytest.mark.parametrize("name", ["e2", "e4"])
    def test_primitive_ideals_and_jacobson(self, registry, name):
        """Should find prime primitive ideals meeting in the Jacobson radical within bound."""
        entries = {
            entry.check_id: entry
            for entry in audit_representation_theorems(registry.resolve(name), 2, 2)
        }
        assert entries["modules.primitive_prime"].status is AuditStatus.PASS
        assert entries["modules.jacobson_vs_primitive"].status is AuditStatus.WITHIN_BOUND
        assert not entries["modules.annihilator_ideal"].failed

    @pytest.mark.parametrize("name", ["e2", "e4"])
    def test_simple_annihilators_are_prime(self, registry, name):
        """Should give a two-sided prime annihilator for every simple module found."""
        base = registry.resolve(name)
        simple = [mod for mod in enumerate_modules(base, 2, 2).modules if is_simple(mod)]
        assert simple
        for mod in simple:
            assert is_prime(base, annihilators(mod).two_sided, Side.TWO)

    def test_e1(self, e1):
        """Should raise no failures on one element."""
        assert not any(entry.failed for entry in audit_representation_theorems(e1, 2, 2))

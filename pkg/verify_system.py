#!/usr/bin/env python3
"""
Quick installation check for the bei toolkit

Loads the fixture corpus, builds one member of each family and runs the
regularity pipeline on graphs whose answers are known by hand.
"""

import json
import sys


def main():
    print("🔍 VERIFYING BEI INSTALLATION")
    print("=" * 50)

    # Test 1: Fixture corpus
    print("1. Testing fixture corpus...")
    try:
        with open('data/chain_corpus.json', 'r') as f:
            data = json.load(f)
        print("   ✅ Corpus loads successfully")
        print(f"   📊 Chains: {len(data['chains'])}")
        print(f"   📊 Invalid chains: {len(data['invalid_chains'])}")
        print(f"   📊 Graphs: {len(data['graphs'])}")
    except Exception as e:
        print(f"   ❌ Corpus error: {e}")
        return False

    # Test 2: Families
    print("\n2. Testing graph families...")
    try:
        from bei.graphs.families import ChainSpec, StarParams, validate_setup, whiskered_chain, whiskered_star

        star = whiskered_star(StarParams(4, 3, 3))
        print(f"   ✅ Whiskered K4 ⋆3 K3: {star.n} vertices, {len(star.edges)} edges")

        for entry in data['chains']:
            spec = ChainSpec.from_dict(entry)
            violations = validate_setup(spec)
            if violations:
                print(f"   ❌ Corpus chain {entry['name']} violates {violations}")
                return False
        print(f"   ✅ All {len(data['chains'])} corpus chains satisfy the setup")
        paw = whiskered_chain(ChainSpec.from_dict(data['chains'][0]))
    except Exception as e:
        print(f"   ❌ Family error: {e}")
        return False

    # Test 3: Regularity
    print("\n3. Testing regularity pipeline...")
    try:
        from bei.calculations.cm_block import b_invariant
        from bei.config import Config
        from bei.graphs.graph_core import Graph
        from bei.services.regularity import RegularityService

        service = RegularityService(Config(threads=1))
        checks = [
            ("P3", Graph.from_edges(3, [(1, 2), (2, 3)]), 2, "hochster"),
            ("C4", Graph.from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4)]), 2, "hochster"),
            ("paw", paw, 2, "auto"),
        ]
        for name, G, expected, method in checks:
            report = service.compute(G, method)
            if report.value != expected:
                print(f"   ❌ reg({name}) = {report.value}, expected {expected}")
                return False
            print(f"   ✅ reg({name}) = {report.value} via {report.method} ({report.elapsed_ms:.1f} ms)")

        if b_invariant(paw) != 2:
            print(f"   ❌ b(paw) = {b_invariant(paw)}, expected 2")
            return False
        print("   ✅ b(paw) = 2")
    except Exception as e:
        print(f"   ❌ Regularity error: {e}")
        return False

    # Test 4: Command line
    print("\n4. Testing command line...")
    try:
        from click.testing import CliRunner

        from bei import create_cli

        result = CliRunner().invoke(create_cli(), ["--threads", "1", "groebner", "--oracle"], input="1 2\n2 3\n")
        payload = json.loads(result.output)
        if result.exit_code != 0 or not payload.get('oracle_agrees'):
            print(f"   ❌ groebner --oracle failed: {result.output}")
            return False
        print(f"   ✅ groebner --oracle agrees ({len(payload['generators'])} generators)")
    except Exception as e:
        print(f"   ❌ CLI error: {e}")
        return False

    print("\n" + "=" * 50)
    print("🎉 ALL CHECKS PASSED!")
    print("=" * 50)
    return True


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)

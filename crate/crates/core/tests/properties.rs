// Oracles index matrices directly; range loops read closer to the math.
#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeSet, HashSet};

use num_traits::Zero;
use proptest::prelude::*;
use qscen_core::model::{AlternativeDraft, ConceptDraft, ConceptEntryDraft, EdgeDraft};
use qscen_core::{
    classify, complex_line_graph, complexity, generalized_line_graph, intersection_matrix,
    parse_scenario, q_classes_complex, q_classes_hypergraph_exact, reduce_cognitive_map,
    serialize_scenario, structure_vector, validate_scenario, CognitiveMap, CognitiveMapDraft,
    IngestError, InputFormat, Partition, ScenarioDocument, ScenarioDraft, ScenarioInput, Variant,
};

/// Alternatives as bitmasks over `n_pc` consequences.
fn masks() -> impl Strategy<Value = (usize, Vec<u16>)> {
    (1usize..=10).prop_flat_map(|n_pc| {
        let all = (1u32 << n_pc) as u16;
        (Just(n_pc), prop::collection::vec(1u16..all.max(2), 1..=7))
    })
}

fn draft(n_pc: usize, sets: &[u16]) -> ScenarioDraft {
    ScenarioDraft {
        label: None,
        consequences: (0..n_pc)
            .map(|j| ConceptDraft {
                id: format!("PC_{}", j + 1),
                label: None,
            })
            .collect(),
        alternatives: sets
            .iter()
            .enumerate()
            .map(|(i, &mask)| AlternativeDraft {
                id: format!("EA_{}", i + 1),
                label: None,
                consequences: (0..n_pc)
                    .filter(|j| mask & (1 << j) != 0)
                    .map(|j| format!("PC_{}", j + 1))
                    .collect(),
            })
            .collect(),
    }
}

fn as_sets(sets: &[u16]) -> Vec<HashSet<u32>> {
    sets.iter()
        .map(|&m| (0..16).filter(|j| m & (1 << j) != 0).collect())
        .collect()
}

/// Reflexive-transitive closure of a relation by repeated squaring-free
/// Warshall, then grouped by smallest member.
fn closure_classes(n: usize, related: impl Fn(usize, usize) -> bool) -> Partition {
    let mut reach = vec![vec![false; n]; n];
    for h in 0..n {
        for k in 0..n {
            reach[h][k] = h == k || related(h, k);
        }
    }
    for m in 0..n {
        for h in 0..n {
            for k in 0..n {
                if reach[h][m] && reach[m][k] {
                    reach[h][k] = true;
                }
            }
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for h in 0..n {
        if seen[h] {
            continue;
        }
        let class: Vec<usize> = (0..n).filter(|&k| reach[h][k]).collect();
        for &k in &class {
            seen[k] = true;
        }
        out.push(class);
    }
    out
}

fn shared_dim(a: &HashSet<u32>, b: &HashSet<u32>) -> i64 {
    a.intersection(b).count() as i64 - 1
}

fn max_shared(sets: &[HashSet<u32>]) -> i64 {
    let mut p = -1;
    for h in 0..sets.len() {
        for k in h + 1..sets.len() {
            p = p.max(shared_dim(&sets[h], &sets[k]));
        }
    }
    p
}

/// The complexity sum in plain integer arithmetic, reduced by gcd.
fn complexity_oracle(s: &[usize]) -> (i128, i128) {
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let (mut num, mut den) = (0i128, 1i128);
    for (q, &c) in s.iter().enumerate() {
        let (n2, d2) = (q as i128 + 1, c as i128);
        num = num * d2 + n2 * den;
        den *= d2;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    (num, den)
}

fn as_set_family(p: &Partition, rename: impl Fn(usize) -> usize) -> BTreeSet<BTreeSet<usize>> {
    p.iter()
        .map(|c| c.iter().map(|&h| rename(h)).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn matrix_matches_set_intersections((n_pc, sets) in masks()) {
        let map = validate_scenario(&draft(n_pc, &sets)).unwrap();
        let m = intersection_matrix(&map);
        let raw = as_sets(&sets);
        for h in 0..raw.len() {
            prop_assert_eq!(m.dim(h), raw[h].len() as i64 - 1);
            for k in 0..raw.len() {
                if h != k {
                    prop_assert_eq!(m.face(h, k), shared_dim(&raw[h], &raw[k]));
                }
            }
        }
        prop_assert_eq!(m.max_face(), max_shared(&raw));
    }

    #[test]
    fn classes_match_brute_force_closure((n_pc, sets) in masks()) {
        let map = validate_scenario(&draft(n_pc, &sets)).unwrap();
        let m = intersection_matrix(&map);
        let raw = as_sets(&sets);
        let n = raw.len();
        for q in 0..=m.max_face().max(-1) {
            let at_least = closure_classes(n, |h, k| shared_dim(&raw[h], &raw[k]) >= q);
            let exactly = closure_classes(n, |h, k| h != k && shared_dim(&raw[h], &raw[k]) == q);
            prop_assert_eq!(q_classes_complex(&m, q as usize).unwrap(), at_least);
            prop_assert_eq!(q_classes_hypergraph_exact(&m, q as usize).unwrap(), exactly);
        }
        prop_assert!(q_classes_complex(&m, (m.max_face() + 1).max(0) as usize).is_err());
    }

    #[test]
    fn threshold_classes_refine_upwards((n_pc, sets) in masks()) {
        let m = intersection_matrix(&validate_scenario(&draft(n_pc, &sets)).unwrap());
        let k = classify(&m, Variant::ComplexThreshold);
        for pair in k.levels().windows(2) {
            let (lower, upper) = (&pair[0], &pair[1]);
            for class in upper {
                prop_assert!(lower.iter().any(|c| class.iter().all(|h| c.contains(h))));
            }
            prop_assert!(upper.len() >= lower.len());
        }
        for q in 0..k.levels().len().saturating_sub(1) {
            let eligible = m.eligible(q + 1);
            let restrict = |p: &Partition| p.iter()
                .map(|c| c.iter().filter(|h| eligible.contains(h)).count())
                .filter(|&n| n > 0)
                .count();
            prop_assert!(restrict(&k.levels()[q + 1]) >= restrict(&k.levels()[q]));
        }
    }

    #[test]
    fn s0_is_one_iff_shared_vertex_graph_connected((n_pc, sets) in masks()) {
        let map = validate_scenario(&draft(n_pc, &sets)).unwrap();
        let m = intersection_matrix(&map);
        let raw = as_sets(&sets);
        let connected = closure_classes(raw.len(), |h, k| !raw[h].is_disjoint(&raw[k])).len() == 1;
        match structure_vector(&m, Variant::ComplexThreshold) {
            Ok(s) => prop_assert_eq!(s.entries()[0] == 1, connected),
            Err(_) => prop_assert!(raw.len() == 1 || !connected),
        }
    }

    #[test]
    fn complexity_matches_integer_oracle((n_pc, sets) in masks()) {
        let map = validate_scenario(&draft(n_pc, &sets)).unwrap();
        let m = intersection_matrix(&map);
        let Ok(s) = structure_vector(&m, Variant::ComplexThreshold) else {
            return Ok(());
        };
        prop_assert_eq!(s.len() as i64, m.max_face() + 1);
        let c = complexity(&map, &s).unwrap();
        if map.is_one_to_one() {
            prop_assert!(c.value().is_zero());
        } else {
            let (num, den) = complexity_oracle(s.entries());
            prop_assert!(num > 0);
            prop_assert_eq!(c.exact(), if den == 1 { num.to_string() } else { format!("{num}/{den}") });
        }
    }

    #[test]
    fn relabeling_preserves_structure(
        (n_pc, sets) in masks(),
        seed in any::<u64>(),
    ) {
        let n = sets.len();
        let mut ea_perm: Vec<usize> = (0..n).collect();
        let mut pc_perm: Vec<usize> = (0..n_pc).collect();
        let mut state = seed | 1;
        let mut next = |bound: usize| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % bound as u64) as usize
        };
        for i in (1..n).rev() { let j = next(i + 1); ea_perm.swap(i, j); }
        for i in (1..n_pc).rev() { let j = next(i + 1); pc_perm.swap(i, j); }

        let original = draft(n_pc, &sets);
        // position i of the permuted map holds original alternative ea_perm[i]
        let permuted = ScenarioDraft {
            label: None,
            consequences: pc_perm.iter().map(|&j| ConceptDraft { id: format!("C{j}x"), label: None }).collect(),
            alternatives: ea_perm.iter().map(|&i| AlternativeDraft {
                id: format!("A{i}x"),
                label: None,
                consequences: (0..n_pc).filter(|j| sets[i] & (1 << j) != 0).map(|j| format!("C{j}x")).collect(),
            }).collect(),
        };
        let a = validate_scenario(&original).unwrap();
        let b = validate_scenario(&permuted).unwrap();
        prop_assert_eq!(a.is_one_to_one(), b.is_one_to_one());
        let (ma, mb) = (intersection_matrix(&a), intersection_matrix(&b));
        for variant in [Variant::ComplexThreshold, Variant::HypergraphEquality] {
            let (ka, kb) = (classify(&ma, variant), classify(&mb, variant));
            prop_assert_eq!(ka.structure_vector(), kb.structure_vector());
            for (pa, pb) in ka.levels().iter().zip(kb.levels()) {
                prop_assert_eq!(as_set_family(pa, |h| h), as_set_family(pb, |h| ea_perm[h]));
            }
        }
        if let (Ok(sa), Ok(sb)) = (structure_vector(&ma, Variant::ComplexThreshold), structure_vector(&mb, Variant::ComplexThreshold)) {
            prop_assert_eq!(complexity(&a, &sa).unwrap(), complexity(&b, &sb).unwrap());
        }
    }

    #[test]
    fn line_graph_laws((n_pc, sets) in masks(), a in 0i64..6, b in 0i64..6, c in 0i64..6) {
        let m = intersection_matrix(&validate_scenario(&draft(n_pc, &sets)).unwrap());
        let top = m.max_face().max(0) as usize;
        for p in 0..=top + 1 {
            let (lo, hi) = (complex_line_graph(&m, p), complex_line_graph(&m, p + 1));
            prop_assert!(hi.edges().iter().all(|e| lo.edges().contains(e)));
            for &(h, k) in lo.edges() {
                prop_assert!(h < k);
                prop_assert!(m.face(h, k) >= p as i64);
            }
        }
        for q in 0..=m.max_face().max(-1) {
            let q = q as usize;
            let classes = q_classes_complex(&m, q).unwrap();
            let comps = complex_line_graph(&m, q).components();
            prop_assert_eq!(&comps, &classes);
            let eligible = m.eligible(q);
            let restrict = |p: &Partition| -> Partition {
                p.iter()
                    .map(|c| c.iter().copied().filter(|h| eligible.contains(h)).collect::<Vec<_>>())
                    .filter(|c| !c.is_empty())
                    .collect()
            };
            prop_assert_eq!(restrict(&comps), restrict(&classes));
        }
        let mut v = [a, b, c];
        v.sort();
        let [a, b, c] = v;
        if b < c {
            let whole = generalized_line_graph(&m, a, c).unwrap();
            let left = generalized_line_graph(&m, a, b).unwrap();
            let right = generalized_line_graph(&m, b + 1, c).unwrap();
            let union: BTreeSet<_> = left.edges().iter().chain(right.edges()).copied().collect();
            prop_assert_eq!(whole.edges().iter().copied().collect::<BTreeSet<_>>(), union);
        }
        prop_assert!(generalized_line_graph(&m, 0, m.max_face().max(0)).unwrap().edges() == complex_line_graph(&m, 0).edges());
        let above = m.max_face().max(0) + 1;
        prop_assert!(generalized_line_graph(&m, above, above).unwrap().edges().is_empty());
    }

    #[test]
    fn scenario_json_round_trip((n_pc, sets) in masks()) {
        let map = validate_scenario(&draft(n_pc, &sets)).unwrap();
        let text = serialize_scenario(&map);
        let parsed = parse_scenario(&ScenarioDocument::new(InputFormat::ScenarioJson, text)).unwrap();
        prop_assert_eq!(parsed.scenario, ScenarioInput::Map(map.clone()));
        let again = validate_scenario(&map.to_draft()).unwrap();
        prop_assert_eq!(again, map);
    }
}

#[derive(Debug, Clone)]
struct RandomMap {
    n: usize,
    edges: Vec<(usize, usize)>,
    alternatives: Vec<usize>,
    consequences: Vec<usize>,
}

fn random_maps() -> impl Strategy<Value = RandomMap> {
    (2usize..=20).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec((0..n, 0..n), 0..n * 3),
            // role per concept: 0 alternative, 1 consequence, 2 intermediate
            prop::collection::vec(0u8..3, n),
        )
            .prop_filter_map("need both roles", |(n, edges, roles)| {
                let alternatives: Vec<usize> = (0..n).filter(|&i| roles[i] == 0).collect();
                let consequences: Vec<usize> = (0..n).filter(|&i| roles[i] == 1).collect();
                (!alternatives.is_empty() && !consequences.is_empty()).then_some(RandomMap {
                    n,
                    edges,
                    alternatives,
                    consequences,
                })
            })
    })
}

fn cogmap(r: &RandomMap) -> CognitiveMap {
    let name = |i: usize| format!("n{i}");
    CognitiveMap::from_draft(&CognitiveMapDraft {
        label: None,
        concepts: (0..r.n).map(|i| ConceptEntryDraft::Id(name(i))).collect(),
        edges: r
            .edges
            .iter()
            .map(|&(a, b)| EdgeDraft {
                from: name(a),
                to: name(b),
                sign: None,
            })
            .collect(),
        alternatives: r.alternatives.iter().map(|&i| name(i)).collect(),
        consequences: r.consequences.iter().map(|&i| name(i)).collect(),
    })
    .unwrap()
}

/// Paths of length one or more, by Warshall over the adjacency matrix.
fn reach_oracle(r: &RandomMap) -> Vec<Vec<bool>> {
    let mut reach = vec![vec![false; r.n]; r.n];
    for &(a, b) in &r.edges {
        reach[a][b] = true;
    }
    for m in 0..r.n {
        for a in 0..r.n {
            for b in 0..r.n {
                if reach[a][m] && reach[m][b] {
                    reach[a][b] = true;
                }
            }
        }
    }
    reach
}

fn expected(r: &RandomMap) -> Result<Vec<Vec<String>>, String> {
    let reach = reach_oracle(r);
    r.alternatives
        .iter()
        .map(|&a| {
            let hit: Vec<String> = r
                .consequences
                .iter()
                .filter(|&&c| reach[a][c])
                .map(|c| format!("n{c}"))
                .collect();
            if hit.is_empty() {
                Err(format!("n{a}"))
            } else {
                Ok(hit)
            }
        })
        .collect()
}

fn actual(map: &CognitiveMap) -> Result<Vec<Vec<String>>, String> {
    match reduce_cognitive_map(map) {
        Ok(s) => Ok(s
            .alternatives()
            .iter()
            .map(|a| {
                a.consequences()
                    .iter()
                    .map(|&c| s.consequences()[c].id().to_string())
                    .collect()
            })
            .collect()),
        Err(IngestError::UnreachableAlternative { alternative }) => Err(alternative),
        Err(e) => panic!("unexpected {e}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn reduction_equals_reachability(r in random_maps()) {
        prop_assert_eq!(actual(&cogmap(&r)), expected(&r));
    }

    #[test]
    fn transitive_edges_do_not_change_reduction(r in random_maps()) {
        let reach = reach_oracle(&r);
        let mut extended = r.clone();
        for a in 0..r.n {
            for b in 0..r.n {
                if reach[a][b] {
                    extended.edges.push((a, b));
                }
            }
        }
        prop_assert_eq!(actual(&cogmap(&r)), actual(&cogmap(&extended)));
    }
}

#[test]
fn one_to_one_is_relabel_invariant() {
    let single = |ids: &[(&str, &str)]| ScenarioDraft {
        label: None,
        consequences: ids
            .iter()
            .map(|(_, c)| ConceptDraft {
                id: c.to_string(),
                label: None,
            })
            .collect(),
        alternatives: ids
            .iter()
            .map(|(a, c)| AlternativeDraft {
                id: a.to_string(),
                label: None,
                consequences: vec![c.to_string()],
            })
            .collect(),
    };
    let a = validate_scenario(&single(&[("x", "1"), ("y", "2"), ("z", "3")])).unwrap();
    let b = validate_scenario(&single(&[("z", "3"), ("x", "2"), ("y", "1")])).unwrap();
    assert!(a.is_one_to_one() && b.is_one_to_one());
    let s = classify(&intersection_matrix(&a), Variant::ComplexThreshold).structure_vector();
    assert!(s.is_empty());
    assert!(complexity(&a, &s).unwrap().is_one_to_one());
}

//! Proof shrinking: drop nodes no branch closure depends on, and collapse
//! repeated sentences.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::lang::Formula;

use super::{Justification, NodeId, Proof, ProofNode};

/// Removes nodes that no closure needs, replacing an unneeded split by its
/// smaller child subtree, until nothing changes. Ids are renumbered in
/// preorder. A proof with an open branch is returned unchanged.
pub fn prune(p: &Proof) -> Proof {
    let mut cur = p.clone();
    loop {
        let Some(next) = prune_once(&cur) else { return cur };
        if next.nodes.len() >= cur.nodes.len() {
            return next;
        }
        cur = next;
    }
}

fn split_side(j: &Justification) -> Option<super::Side> {
    match j {
        Justification::Rule { rule, .. } if rule.is_split() => rule.side(),
        _ => None,
    }
}

fn prune_once(p: &Proof) -> Option<Proof> {
    let n = p.nodes.len();
    let children = p.children();
    let canon: Vec<Formula> = p.nodes.iter().map(|x| x.sentence.alpha_canonical()).collect();
    let mut needed = alloc::vec![false; n];
    needed[0] = true;
    for leaf in (0..n).filter(|&i| children[i].is_empty()) {
        let mut first: BTreeMap<&Formula, NodeId> = BTreeMap::new();
        let mut pair = None;
        for k in p.branch(leaf) {
            let c = &canon[k];
            let hit = match c {
                Formula::Not(x) => first.get(&**x).copied(),
                _ => None,
            }
            .or_else(|| first.get(&&Formula::not(c.clone())).copied());
            if let Some(j) = hit {
                pair = Some((j, k));
                break;
            }
            first.entry(c).or_insert(k);
        }
        let (a, b) = pair?;
        needed[a] = true;
        needed[b] = true;
    }
    let mut work: Vec<NodeId> = (0..n).filter(|&i| needed[i]).collect();
    while let Some(i) = work.pop() {
        let mut mark = |j: NodeId, work: &mut Vec<NodeId>| {
            if !needed[j] {
                needed[j] = true;
                work.push(j);
            }
        };
        if let Justification::Rule { rule, ancestor } = &p.nodes[i].justification {
            mark(*ancestor, &mut work);
            if rule.is_split() {
                if let Some(par) = p.nodes[i].parent {
                    for &sib in &children[par] {
                        mark(sib, &mut work);
                    }
                }
            }
        }
    }
    let mut sizes = alloc::vec![1usize; n];
    for i in (0..n).rev() {
        if let Some(par) = p.nodes[i].parent {
            sizes[par] += sizes[i];
        }
    }
    let mut out = Vec::with_capacity(n);
    let mut map = alloc::vec![None; n];
    let mut stack = alloc::vec![(0usize, None::<NodeId>)];
    while let Some((i, new_parent)) = stack.pop() {
        let under = if needed[i] {
            map[i] = Some(out.len());
            out.push(ProofNode { parent: new_parent, ..p.nodes[i].clone() });
            Some(out.len() - 1)
        } else {
            new_parent
        };
        let mut kids = children[i].clone();
        kids.sort_by_key(|&k| split_side(&p.nodes[k].justification));
        if kids.len() == 2 && !needed[kids[0]] && !needed[kids[1]] {
            let keep = if sizes[kids[1]] < sizes[kids[0]] { kids[1] } else { kids[0] };
            kids = alloc::vec![keep];
        }
        for &k in kids.iter().rev() {
            stack.push((k, under));
        }
    }
    for node in &mut out {
        if let Justification::Rule { ancestor, .. } = &mut node.justification {
            *ancestor = map[*ancestor].expect("ancestors of kept nodes are kept");
        }
    }
    Some(Proof { nodes: out, ..p.clone() })
}

/// Drops every node whose sentence already occurs strictly above it, except
/// rule 3/4 siblings; citations move to the earlier occurrence.
pub fn dedupe(p: &Proof) -> Proof {
    let n = p.nodes.len();
    let mut rep: Vec<NodeId> = (0..n).collect();
    let mut kept = alloc::vec![true; n];
    for i in 1..n {
        if split_side(&p.nodes[i].justification).is_some() {
            continue;
        }
        let branch = p.branch(i);
        if let Some(&j) = branch[..branch.len() - 1].iter().find(|&&j| p.nodes[j].sentence == p.nodes[i].sentence) {
            kept[i] = false;
            rep[i] = rep[j];
        }
    }
    // nearest kept node at or above each node
    let mut anchor: Vec<NodeId> = (0..n).collect();
    for i in 0..n {
        if !kept[i] {
            anchor[i] = anchor[p.nodes[i].parent.expect("root is kept")];
        }
    }
    let mut new_id = alloc::vec![usize::MAX; n];
    let mut nodes = Vec::new();
    for i in 0..n {
        if !kept[i] {
            continue;
        }
        new_id[i] = nodes.len();
        let mut node = p.nodes[i].clone();
        node.parent = node.parent.map(|q| new_id[anchor[q]]);
        if let Justification::Rule { ancestor, .. } = &mut node.justification {
            *ancestor = new_id[rep[*ancestor]];
        }
        nodes.push(node);
    }
    Proof { nodes, ..p.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enrichment::EnrichmentLevel;
    use crate::lang::parse_formula;
    use crate::systems::AxiomBasis;
    use crate::tableaux::tests::tautology_proof;
    use crate::tableaux::{check_proof, Rule, Side};

    #[test]
    fn removes_idle_axiom() {
        let mut p = tautology_proof();
        let basis = AxiomBasis::new("b", alloc::vec![parse_formula("C1 = C1").unwrap()]);
        // splice an unused axiom right under the root
        for n in p.nodes.iter_mut().skip(1) {
            n.parent = n.parent.map(|q| q + 1);
            if let Justification::Rule { ancestor, .. } = &mut n.justification {
                if *ancestor > 0 {
                    *ancestor += 1;
                }
            }
        }
        p.nodes.insert(
            1,
            ProofNode { parent: Some(0), sentence: parse_formula("C1 = C1").unwrap(), justification: Justification::ProperAxiom(0) },
        );
        p.nodes[2].parent = Some(1);
        assert!(check_proof(&p, &basis, EnrichmentLevel::None).is_valid());
        // the last node is idle too: closure already holds at node 3
        let mut want = tautology_proof();
        want.nodes.pop();
        assert_eq!(prune(&p), want);
    }

    #[test]
    fn dedupe_keeps_validity() {
        let mut p = tautology_proof();
        // repeat node 2 under node 4
        p.nodes.push(ProofNode {
            parent: Some(4),
            sentence: p.nodes[2].sentence.clone(),
            justification: Justification::Rule { rule: Rule::Conjunction(Side::Left), ancestor: 1 },
        });
        let basis = AxiomBasis::empty();
        assert!(check_proof(&p, &basis, EnrichmentLevel::None).is_valid());
        let q = dedupe(&p);
        assert_eq!(q.nodes.len(), 5);
        assert!(check_proof(&q, &basis, EnrichmentLevel::None).is_valid());
    }
}

//! Graph comparison up to blank-node relabeling: iterative signature
//! refinement to partition blank nodes, then backtracking over the
//! remaining ties.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

use crate::rdf::{Graph, Node, Triple};

/// True iff some bijective blank-node relabeling makes the triple sets
/// equal. Ground graphs compare by set equality; prefix maps are ignored.
pub fn compare_graphs(a: &Graph, b: &Graph) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let (ground_a, blank_a) = split(a);
    let (ground_b, blank_b) = split(b);
    if ground_a != ground_b {
        return false;
    }
    let labels_a = blank_labels(&blank_a);
    let labels_b = blank_labels(&blank_b);
    if labels_a.len() != labels_b.len() {
        return false;
    }
    if labels_a.is_empty() {
        return blank_a == blank_b;
    }

    let sig_a = refine(&blank_a, &labels_a);
    let sig_b = refine(&blank_b, &labels_b);

    // signature histograms must agree before any search
    let mut hist_a: BTreeMap<u64, usize> = BTreeMap::new();
    for s in sig_a.values() {
        *hist_a.entry(*s).or_default() += 1;
    }
    let mut hist_b: BTreeMap<u64, usize> = BTreeMap::new();
    for s in sig_b.values() {
        *hist_b.entry(*s).or_default() += 1;
    }
    if hist_a != hist_b {
        return false;
    }

    // order: smallest candidate class first to keep branching low
    let mut order: Vec<&String> = labels_a.iter().collect();
    order.sort_by_key(|l| (hist_a[&sig_a[*l]], (*l).clone()));

    let mut candidates: HashMap<&String, Vec<&String>> = HashMap::new();
    for la in &labels_a {
        let want = sig_a[la];
        candidates.insert(
            la,
            labels_b.iter().filter(|lb| sig_b[*lb] == want).collect(),
        );
    }

    let triples_by_label = index_by_label(&blank_a);
    let mut mapping: HashMap<&str, &str> = HashMap::new();
    let mut used: BTreeSet<&str> = BTreeSet::new();
    backtrack(
        &order,
        0,
        &mut mapping,
        &mut used,
        &candidates,
        &triples_by_label,
        &blank_b,
    )
}

fn split(g: &Graph) -> (BTreeSet<Triple>, BTreeSet<Triple>) {
    let mut ground = BTreeSet::new();
    let mut blank = BTreeSet::new();
    for t in g.iter() {
        if t.subject.is_blank() || t.object.is_blank() {
            blank.insert(t);
        } else {
            ground.insert(t);
        }
    }
    (ground, blank)
}

fn blank_labels(triples: &BTreeSet<Triple>) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for t in triples {
        if let Node::Blank(l) = &t.subject {
            out.insert(l.clone());
        }
        if let Node::Blank(l) = &t.object {
            out.insert(l.clone());
        }
    }
    out
}

fn hash_of(items: &mut Vec<String>) -> u64 {
    items.sort();
    let mut h = DefaultHasher::new();
    items.hash(&mut h);
    h.finish()
}

/// Iterated neighborhood hashing. Converges in at most |labels| rounds;
/// stops early once the partition is stable.
fn refine(triples: &BTreeSet<Triple>, labels: &BTreeSet<String>) -> HashMap<String, u64> {
    let mut sig: HashMap<String, u64> = labels.iter().map(|l| (l.clone(), 0)).collect();
    let encode = |n: &Node, sig: &HashMap<String, u64>| -> String {
        match n {
            Node::Blank(l) => format!("B{}", sig[l]),
            other => format!("G{other}"),
        }
    };
    for _ in 0..labels.len().max(1) {
        let mut next: HashMap<String, u64> = HashMap::new();
        for label in labels {
            let mut items = Vec::new();
            for t in triples {
                if matches!(&t.subject, Node::Blank(l) if l == label) {
                    items.push(format!("s|{}|{}", t.predicate, encode(&t.object, &sig)));
                }
                if matches!(&t.object, Node::Blank(l) if l == label) {
                    items.push(format!("o|{}|{}", t.predicate, encode(&t.subject, &sig)));
                }
            }
            items.push(format!("self|{}", sig[label]));
            next.insert(label.clone(), hash_of(&mut items));
        }
        let stable = partition_classes(&sig) == partition_classes(&next);
        sig = next;
        if stable {
            break;
        }
    }
    sig
}

fn partition_classes(sig: &HashMap<String, u64>) -> BTreeMap<u64, BTreeSet<&String>> {
    let mut out: BTreeMap<u64, BTreeSet<&String>> = BTreeMap::new();
    for (l, s) in sig {
        out.entry(*s).or_default().insert(l);
    }
    out
}

fn index_by_label(triples: &BTreeSet<Triple>) -> HashMap<String, Vec<&Triple>> {
    let mut out: HashMap<String, Vec<&Triple>> = HashMap::new();
    for t in triples {
        if let Node::Blank(l) = &t.subject {
            out.entry(l.clone()).or_default().push(t);
        }
        if let Node::Blank(l) = &t.object {
            if !matches!(&t.subject, Node::Blank(s) if s == l) {
                out.entry(l.clone()).or_default().push(t);
            }
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn backtrack<'a>(
    order: &[&'a String],
    depth: usize,
    mapping: &mut HashMap<&'a str, &'a str>,
    used: &mut BTreeSet<&'a str>,
    candidates: &HashMap<&'a String, Vec<&'a String>>,
    triples_by_label: &'a HashMap<String, Vec<&'a Triple>>,
    blank_b: &BTreeSet<Triple>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let label = order[depth];
    for cand in &candidates[label] {
        if used.contains(cand.as_str()) {
            continue;
        }
        mapping.insert(label.as_str(), cand.as_str());
        used.insert(cand.as_str());
        if consistent(label, mapping, triples_by_label, blank_b)
            && backtrack(order, depth + 1, mapping, used, candidates, triples_by_label, blank_b)
        {
            return true;
        }
        mapping.remove(label.as_str());
        used.remove(cand.as_str());
    }
    false
}

/// Every incident triple of `label` whose blanks are all mapped must have
/// its image present in the other graph.
fn consistent(
    label: &str,
    mapping: &HashMap<&str, &str>,
    triples_by_label: &HashMap<String, Vec<&Triple>>,
    blank_b: &BTreeSet<Triple>,
) -> bool {
    let Some(incident) = triples_by_label.get(label) else {
        return true;
    };
    for t in incident {
        let mapped_subject = match &t.subject {
            Node::Blank(l) => match mapping.get(l.as_str()) {
                Some(m) => Node::blank(*m),
                None => continue,
            },
            other => other.clone(),
        };
        let mapped_object = match &t.object {
            Node::Blank(l) => match mapping.get(l.as_str()) {
                Some(m) => Node::blank(*m),
                None => continue,
            },
            other => other.clone(),
        };
        let image = Triple {
            subject: mapped_subject,
            predicate: t.predicate.clone(),
            object: mapped_object,
        };
        if !blank_b.contains(&image) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::parse_turtle;

    #[test]
    fn identical_graphs_compare_equal() {
        let g = parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ex:b . _:x ex:q ex:c .").unwrap();
        assert!(compare_graphs(&g, &g));
    }

    #[test]
    fn blank_relabeling_compares_equal() {
        let a = parse_turtle("@prefix ex: <http://e/> . _:x ex:p ex:b . _:x ex:q _:y .").unwrap();
        let b = parse_turtle("@prefix ex: <http://e/> . _:m ex:p ex:b . _:m ex:q _:n .").unwrap();
        assert!(compare_graphs(&a, &b));
    }

    #[test]
    fn missing_triple_compares_unequal() {
        let a = parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ex:b . ex:a ex:q ex:c .").unwrap();
        let b = parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ex:b .").unwrap();
        assert!(!compare_graphs(&a, &b));
    }

    #[test]
    fn structure_distinguishes_blanks() {
        // star vs chain over three blanks
        let a = parse_turtle("@prefix ex: <http://e/> . _:1 ex:p _:2 . _:1 ex:p _:3 .").unwrap();
        let b = parse_turtle("@prefix ex: <http://e/> . _:1 ex:p _:2 . _:2 ex:p _:3 .").unwrap();
        assert!(!compare_graphs(&a, &b));
    }

    #[test]
    fn symmetric_blank_cycle_needs_backtracking() {
        let a = parse_turtle("@prefix ex: <http://e/> . _:a ex:p _:b . _:b ex:p _:a .").unwrap();
        let b = parse_turtle("@prefix ex: <http://e/> . _:u ex:p _:v . _:v ex:p _:u .").unwrap();
        assert!(compare_graphs(&a, &b));
    }

    #[test]
    fn self_loop_vs_two_cycle() {
        let a = parse_turtle("@prefix ex: <http://e/> . _:a ex:p _:a . _:b ex:p _:b .").unwrap();
        let b = parse_turtle("@prefix ex: <http://e/> . _:u ex:p _:v . _:v ex:p _:u .").unwrap();
        assert!(!compare_graphs(&a, &b));
    }
}

//! Deterministic Turtle serialization: prefixes sorted by label, triples
//! grouped by subject and sorted by (subject, predicate, object), so the
//! same triple set always produces the same bytes regardless of insertion
//! order.

use crate::rdf::{Graph, Literal, Node};
use crate::vocab::{RDF_TYPE, XSD_BOOLEAN, XSD_DECIMAL, XSD_DOUBLE, XSD_INTEGER, XSD_STRING};

pub fn serialize_turtle(graph: &Graph) -> String {
    let mut out = String::new();
    for (label, ns) in graph.prefixes() {
        out.push_str(&format!("@prefix {label}: <{ns}> .\n"));
    }
    if !graph.prefixes().is_empty() && !graph.is_empty() {
        out.push('\n');
    }

    let mut current_subject: Option<Node> = None;
    let mut current_predicate: Option<Node> = None;
    for triple in graph.iter() {
        let same_subject = current_subject.as_ref() == Some(&triple.subject);
        let same_predicate = same_subject && current_predicate.as_ref() == Some(&triple.predicate);
        if same_predicate {
            out.push_str(" ,\n        ");
            out.push_str(&render_node(&triple.object, graph, false));
        } else if same_subject {
            out.push_str(" ;\n    ");
            out.push_str(&render_node(&triple.predicate, graph, true));
            out.push(' ');
            out.push_str(&render_node(&triple.object, graph, false));
            current_predicate = Some(triple.predicate.clone());
        } else {
            if current_subject.is_some() {
                out.push_str(" .\n");
            }
            out.push_str(&render_node(&triple.subject, graph, false));
            out.push(' ');
            out.push_str(&render_node(&triple.predicate, graph, true));
            out.push(' ');
            out.push_str(&render_node(&triple.object, graph, false));
            current_subject = Some(triple.subject.clone());
            current_predicate = Some(triple.predicate.clone());
        }
    }
    if current_subject.is_some() {
        out.push_str(" .\n");
    }
    out
}

fn render_node(node: &Node, graph: &Graph, predicate_position: bool) -> String {
    match node {
        Node::Iri(iri) => {
            if predicate_position && iri == RDF_TYPE {
                return "a".to_string();
            }
            render_iri(iri, graph)
        }
        Node::Blank(label) => format!("_:{label}"),
        Node::Literal(lit) => render_literal(lit, graph),
    }
}

fn render_iri(iri: &str, graph: &Graph) -> String {
    let mut best: Option<(&str, &str)> = None;
    for (label, ns) in graph.prefixes() {
        if let Some(local) = iri.strip_prefix(ns.as_str()) {
            if valid_local(local) && best.map(|(_, l)| local.len() < l.len()).unwrap_or(true) {
                best = Some((label, local));
            }
        }
    }
    match best {
        Some((label, local)) => format!("{label}:{local}"),
        None => format!("<{iri}>"),
    }
}

/// Conservative PN_LOCAL check; anything else falls back to `<...>`.
fn valid_local(local: &str) -> bool {
    if local.is_empty() {
        return false;
    }
    if local.starts_with('.') || local.ends_with('.') || local.starts_with('-') {
        return false;
    }
    local
        .chars()
        .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
}

fn render_literal(lit: &Literal, graph: &Graph) -> String {
    // bare numeric/boolean forms only when re-lexing yields the same datatype
    match lit.datatype() {
        XSD_INTEGER if is_integer_lexical(lit.lexical()) => return lit.lexical().to_string(),
        XSD_DECIMAL if is_decimal_lexical(lit.lexical()) => return lit.lexical().to_string(),
        XSD_DOUBLE if is_double_lexical(lit.lexical()) => return lit.lexical().to_string(),
        XSD_BOOLEAN if lit.lexical() == "true" || lit.lexical() == "false" => {
            return lit.lexical().to_string()
        }
        _ => {}
    }
    let quoted = quote(lit.lexical());
    if let Some(lang) = lit.lang() {
        format!("{quoted}@{lang}")
    } else if lit.datatype() == XSD_STRING {
        quoted
    } else {
        format!("{quoted}^^{}", render_iri(lit.datatype(), graph))
    }
}

fn is_integer_lexical(s: &str) -> bool {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    !body.is_empty() && body.chars().all(|c| c.is_ascii_digit())
}

fn is_decimal_lexical(s: &str) -> bool {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    match body.split_once('.') {
        Some((int, frac)) => {
            !frac.is_empty()
                && int.chars().all(|c| c.is_ascii_digit())
                && frac.chars().all(|c| c.is_ascii_digit())
        }
        None => false,
    }
}

fn is_double_lexical(s: &str) -> bool {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    let Some(e_idx) = body.find(['e', 'E']) else {
        return false;
    };
    let (mantissa, exp) = body.split_at(e_idx);
    let exp = &exp[1..];
    let exp_body = exp.strip_prefix(['+', '-']).unwrap_or(exp);
    if exp_body.is_empty() || !exp_body.chars().all(|c| c.is_ascii_digit()) {
        return false;
    }
    let mantissa_ok = match mantissa.split_once('.') {
        Some((int, frac)) => {
            (!int.is_empty() || !frac.is_empty())
                && int.chars().all(|c| c.is_ascii_digit())
                && frac.chars().all(|c| c.is_ascii_digit())
                && !frac.is_empty()
        }
        None => !mantissa.is_empty() && mantissa.chars().all(|c| c.is_ascii_digit()),
    };
    mantissa_ok
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04X}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{parse_turtle, Triple};

    #[test]
    fn empty_graph_serializes_to_prefix_directives_only() {
        let mut g = Graph::new();
        g.set_prefix("ex", "http://ex.org/");
        let out = serialize_turtle(&g);
        assert_eq!(out, "@prefix ex: <http://ex.org/> .\n");
    }

    #[test]
    fn single_triple_round_trips() {
        let doc = "@prefix ex: <http://ex.org/> . ex:a ex:p ex:b .";
        let g = parse_turtle(doc).unwrap();
        let reparsed = parse_turtle(&serialize_turtle(&g)).unwrap();
        assert_eq!(reparsed.len(), 1);
        assert!(crate::rdf::compare_graphs(&g, &reparsed));
    }

    #[test]
    fn insertion_order_does_not_affect_output() {
        let a = Triple::new(
            Node::iri("http://e/a"),
            Node::iri("http://e/p"),
            Node::iri("http://e/x"),
        )
        .unwrap();
        let b = Triple::new(
            Node::iri("http://e/b"),
            Node::iri("http://e/q"),
            Node::literal_str("v"),
        )
        .unwrap();
        let mut g1 = Graph::new();
        g1.insert(a.clone());
        g1.insert(b.clone());
        let mut g2 = Graph::new();
        g2.insert(b);
        g2.insert(a);
        assert_eq!(serialize_turtle(&g1), serialize_turtle(&g2));
    }

    #[test]
    fn quoted_decimal_keeps_datatype_on_round_trip() {
        let mut g = Graph::new();
        g.set_prefix("xsd", crate::vocab::XSD_NS);
        g.insert(
            Triple::new(
                Node::iri("http://e/a"),
                Node::iri("http://e/p"),
                Node::literal_typed("1250", XSD_DECIMAL),
            )
            .unwrap(),
        );
        let out = serialize_turtle(&g);
        assert!(out.contains("\"1250\"^^xsd:decimal"), "{out}");
        let back = parse_turtle(&out).unwrap();
        assert!(crate::rdf::compare_graphs(&g, &back));
    }

    #[test]
    fn escapes_round_trip() {
        let mut g = Graph::new();
        g.insert(
            Triple::new(
                Node::iri("http://e/a"),
                Node::iri("http://e/p"),
                Node::literal_str("line\nbreak \"quoted\" back\\slash"),
            )
            .unwrap(),
        );
        let back = parse_turtle(&serialize_turtle(&g)).unwrap();
        assert!(crate::rdf::compare_graphs(&g, &back));
    }
}

//! Recursive-descent parser for a Turtle subset: `@prefix`, `@base`, `a`,
//! predicate lists `;`, object lists `,`, IRI references, prefixed names,
//! string/numeric/boolean literals, `^^` datatypes, language tags, and
//! labeled or anonymous `[ ]` blank nodes. Collections `( )` and
//! multi-line strings are rejected with explicit errors.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::rdf::{Graph, Node, Triple};
use crate::vocab::{XSD_BOOLEAN, XSD_DECIMAL, XSD_DOUBLE, XSD_INTEGER};

/// Syntax or resolution error with a 1-based source position.
#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

fn err<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        col,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    IriRef(String),
    PName { prefix: String, local: String },
    BlankLabel(String),
    Str(String),
    LangTag(String),
    Integer(String),
    Decimal(String),
    Double(String),
    Bool(bool),
    A,
    Dot,
    Semi,
    Comma,
    LBracket,
    RBracket,
    CaretCaret,
    PrefixDirective,
    BaseDirective,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::IriRef(i) => format!("<{i}>"),
            Tok::PName { prefix, local } => format!("{prefix}:{local}"),
            Tok::BlankLabel(l) => format!("_:{l}"),
            Tok::Str(_) => "string literal".to_string(),
            Tok::LangTag(t) => format!("@{t}"),
            Tok::Integer(v) | Tok::Decimal(v) | Tok::Double(v) => v.clone(),
            Tok::Bool(b) => b.to_string(),
            Tok::A => "'a'".to_string(),
            Tok::Dot => "'.'".to_string(),
            Tok::Semi => "';'".to_string(),
            Tok::Comma => "','".to_string(),
            Tok::LBracket => "'['".to_string(),
            Tok::RBracket => "']'".to_string(),
            Tok::CaretCaret => "'^^'".to_string(),
            Tok::PrefixDirective => "@prefix".to_string(),
            Tok::BaseDirective => "@base".to_string(),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    _src: &'a str,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
            _src: src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn tokenize(mut self) -> Result<Vec<Spanned>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_trivia();
            let (line, col) = (self.line, self.col);
            let Some(c) = self.peek() else {
                out.push(Spanned {
                    tok: Tok::Eof,
                    line,
                    col,
                });
                return Ok(out);
            };
            let tok = match c {
                '<' => self.lex_iriref()?,
                '"' => self.lex_string()?,
                '\'' => return err(line, col, "single-quoted strings are not supported"),
                '(' | ')' => {
                    return err(line, col, "collections '( )' are not supported by this Turtle subset")
                }
                '[' => {
                    self.bump();
                    Tok::LBracket
                }
                ']' => {
                    self.bump();
                    Tok::RBracket
                }
                ';' => {
                    self.bump();
                    Tok::Semi
                }
                ',' => {
                    self.bump();
                    Tok::Comma
                }
                '^' => {
                    self.bump();
                    if self.peek() == Some('^') {
                        self.bump();
                        Tok::CaretCaret
                    } else {
                        return err(line, col, "expected '^^'");
                    }
                }
                '@' => {
                    self.bump();
                    let word = self.lex_bare_word();
                    match word.as_str() {
                        "prefix" => Tok::PrefixDirective,
                        "base" => Tok::BaseDirective,
                        w if !w.is_empty() && w.chars().all(|c| c.is_ascii_alphanumeric() || c == '-') => {
                            Tok::LangTag(w.to_string())
                        }
                        _ => return err(line, col, "expected @prefix, @base, or a language tag"),
                    }
                }
                '_' if self.peek_at(1) == Some(':') => {
                    self.bump();
                    self.bump();
                    let label = self.lex_local();
                    if label.is_empty() {
                        return err(line, col, "empty blank node label");
                    }
                    Tok::BlankLabel(label)
                }
                '.' if !matches!(self.peek_at(1), Some(d) if d.is_ascii_digit()) => {
                    self.bump();
                    Tok::Dot
                }
                c if c.is_ascii_digit() || c == '+' || c == '-' || c == '.' => self.lex_number(line, col)?,
                c if is_pname_start(c) || c == ':' => self.lex_pname_or_keyword(line, col)?,
                other => return err(line, col, format!("unexpected character '{other}'")),
            };
            out.push(Spanned { tok, line, col });
        }
    }

    fn lex_iriref(&mut self) -> Result<Tok, ParseError> {
        let (line, col) = (self.line, self.col);
        self.bump(); // '<'
        let mut out = String::new();
        loop {
            match self.peek() {
                None => return err(line, col, "unterminated IRI reference"),
                Some('>') => {
                    self.bump();
                    return Ok(Tok::IriRef(out));
                }
                Some('\n') => return err(line, col, "newline inside IRI reference"),
                Some('\\') => {
                    self.bump();
                    match self.peek() {
                        Some('u') | Some('U') => {
                            let c = self.lex_unicode_escape(line, col)?;
                            out.push(c);
                        }
                        _ => return err(self.line, self.col, "invalid escape in IRI reference"),
                    }
                }
                Some(' ') => return err(self.line, self.col, "space inside IRI reference"),
                Some(c) => {
                    out.push(c);
                    self.bump();
                }
            }
        }
    }

    fn lex_unicode_escape(&mut self, line: usize, col: usize) -> Result<char, ParseError> {
        let kind = self.bump().unwrap(); // 'u' or 'U'
        let width = if kind == 'u' { 4 } else { 8 };
        let mut value: u32 = 0;
        for _ in 0..width {
            let Some(c) = self.bump() else {
                return err(line, col, "truncated unicode escape");
            };
            let Some(d) = c.to_digit(16) else {
                return err(line, col, "invalid hex digit in unicode escape");
            };
            value = value * 16 + d;
        }
        char::from_u32(value).map(Ok).unwrap_or_else(|| {
            err(line, col, format!("invalid unicode code point U+{value:X}"))
        })
    }

    fn lex_string(&mut self) -> Result<Tok, ParseError> {
        let (line, col) = (self.line, self.col);
        self.bump(); // opening quote
        if self.peek() == Some('"') && self.peek_at(1) == Some('"') {
            return err(line, col, "multi-line strings are not supported by this Turtle subset");
        }
        let mut out = String::new();
        loop {
            match self.peek() {
                None => return err(line, col, "unterminated string literal"),
                Some('"') => {
                    self.bump();
                    return Ok(Tok::Str(out));
                }
                Some('\n') => return err(line, col, "newline inside string literal"),
                Some('\\') => {
                    self.bump();
                    match self.peek() {
                        Some('t') => {
                            out.push('\t');
                            self.bump();
                        }
                        Some('b') => {
                            out.push('\u{8}');
                            self.bump();
                        }
                        Some('n') => {
                            out.push('\n');
                            self.bump();
                        }
                        Some('r') => {
                            out.push('\r');
                            self.bump();
                        }
                        Some('f') => {
                            out.push('\u{c}');
                            self.bump();
                        }
                        Some('"') => {
                            out.push('"');
                            self.bump();
                        }
                        Some('\'') => {
                            out.push('\'');
                            self.bump();
                        }
                        Some('\\') => {
                            out.push('\\');
                            self.bump();
                        }
                        Some('u') | Some('U') => {
                            let c = self.lex_unicode_escape(line, col)?;
                            out.push(c);
                        }
                        _ => return err(self.line, self.col, "invalid string escape"),
                    }
                }
                Some(c) => {
                    out.push(c);
                    self.bump();
                }
            }
        }
    }

    fn lex_bare_word(&mut self) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '-' {
                out.push(c);
                self.bump();
            } else {
                break;
            }
        }
        out
    }

    /// PN_LOCAL-ish: letters, digits, '_', '-', '%XX', and non-final dots.
    fn lex_local(&mut self) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if is_pname_char(c) || c == '%' {
                out.push(c);
                self.bump();
            } else if c == '.' {
                // a dot only continues the local name if a name char follows
                match self.peek_at(1) {
                    Some(n) if is_pname_char(n) || n == '.' => {
                        out.push(c);
                        self.bump();
                    }
                    _ => break,
                }
            } else {
                break;
            }
        }
        out
    }

    fn lex_number(&mut self, line: usize, col: usize) -> Result<Tok, ParseError> {
        let mut out = String::new();
        if matches!(self.peek(), Some('+') | Some('-')) {
            out.push(self.bump().unwrap());
        }
        let mut saw_digit = false;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            out.push(self.bump().unwrap());
            saw_digit = true;
        }
        let mut is_decimal = false;
        if self.peek() == Some('.') && matches!(self.peek_at(1), Some(c) if c.is_ascii_digit()) {
            is_decimal = true;
            out.push(self.bump().unwrap());
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                out.push(self.bump().unwrap());
                saw_digit = true;
            }
        }
        if !saw_digit {
            return err(line, col, "malformed numeric literal");
        }
        if matches!(self.peek(), Some('e') | Some('E')) {
            out.push(self.bump().unwrap());
            if matches!(self.peek(), Some('+') | Some('-')) {
                out.push(self.bump().unwrap());
            }
            let mut exp_digits = false;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                out.push(self.bump().unwrap());
                exp_digits = true;
            }
            if !exp_digits {
                return err(line, col, "malformed exponent in numeric literal");
            }
            return Ok(Tok::Double(out));
        }
        if is_decimal {
            Ok(Tok::Decimal(out))
        } else {
            Ok(Tok::Integer(out))
        }
    }

    fn lex_pname_or_keyword(&mut self, line: usize, col: usize) -> Result<Tok, ParseError> {
        let mut word = String::new();
        while let Some(c) = self.peek() {
            if is_pname_char(c) {
                word.push(c);
                self.bump();
            } else if c == '.' {
                match self.peek_at(1) {
                    Some(n) if is_pname_char(n) => {
                        word.push(c);
                        self.bump();
                    }
                    _ => break,
                }
            } else {
                break;
            }
        }
        if self.peek() == Some(':') {
            self.bump();
            let local = self.lex_local();
            return Ok(Tok::PName {
                prefix: word,
                local,
            });
        }
        match word.as_str() {
            "a" => Ok(Tok::A),
            "true" => Ok(Tok::Bool(true)),
            "false" => Ok(Tok::Bool(false)),
            "" => err(line, col, "unexpected ':' — prefixed name needs a declared prefix"),
            other => err(line, col, format!("unexpected token '{other}'")),
        }
    }
}

fn is_pname_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_pname_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-'
}

/// True when the string has an RFC 3987 scheme, i.e. is an absolute IRI.
pub(crate) fn is_absolute_iri(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    for c in chars {
        if c == ':' {
            return true;
        }
        if !(c.is_ascii_alphanumeric() || c == '+' || c == '-' || c == '.') {
            return false;
        }
    }
    false
}

/// RFC 3986 §5 reference resolution, trimmed to what ontology files need.
fn resolve_iri(base: &str, reference: &str) -> String {
    if is_absolute_iri(reference) {
        return reference.to_string();
    }
    let (scheme, rest) = match base.split_once(':') {
        Some(pair) => pair,
        None => return reference.to_string(),
    };
    let (authority, path_qf) = if let Some(after) = rest.strip_prefix("//") {
        match after.find('/') {
            Some(idx) => (Some(&after[..idx]), &after[idx..]),
            None => (Some(after), ""),
        }
    } else {
        (None, rest)
    };
    let path = path_qf
        .split(['?', '#'])
        .next()
        .unwrap_or(path_qf);

    let rebuilt = |p: String| -> String {
        match authority {
            Some(a) => format!("{scheme}://{a}{p}"),
            None => format!("{scheme}:{p}"),
        }
    };
    if let Some(frag) = reference.strip_prefix('#') {
        let without_frag = base.split('#').next().unwrap_or(base);
        return format!("{without_frag}#{frag}");
    }
    if let Some(q) = reference.strip_prefix('?') {
        return rebuilt(format!("{path}?{q}"));
    }
    if let Some(net) = reference.strip_prefix("//") {
        return format!("{scheme}://{net}");
    }
    if reference.starts_with('/') {
        return rebuilt(remove_dot_segments(reference));
    }
    let dir = match path.rfind('/') {
        Some(idx) => &path[..=idx],
        None => "/",
    };
    rebuilt(remove_dot_segments(&format!("{dir}{reference}")))
}

fn remove_dot_segments(path: &str) -> String {
    let mut output: Vec<&str> = Vec::new();
    for segment in path.split('/') {
        match segment {
            "." => {}
            ".." => {
                output.pop();
            }
            s => output.push(s),
        }
    }
    let mut joined = output.join("/");
    if path.ends_with("/.") || path.ends_with("/..") {
        joined.push('/');
    }
    if !joined.starts_with('/') {
        joined.insert(0, '/');
    }
    joined
}

struct Parser {
    toks: Vec<Spanned>,
    idx: usize,
    prefixes: HashMap<String, String>,
    base: Option<String>,
    graph: Graph,
    anon_counter: usize,
    doc_labels: BTreeSet<String>,
}

impl Parser {
    fn cur(&self) -> &Spanned {
        &self.toks[self.idx]
    }

    fn advance(&mut self) -> Spanned {
        let t = self.toks[self.idx].clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        let cur = self.cur().clone();
        if cur.tok == tok {
            self.advance();
            Ok(())
        } else {
            err(
                cur.line,
                cur.col,
                format!("expected {} but found {}", tok.describe(), cur.tok.describe()),
            )
        }
    }

    fn fresh_blank(&mut self) -> Node {
        loop {
            self.anon_counter += 1;
            let label = format!("anon{}", self.anon_counter);
            if !self.doc_labels.contains(&label) {
                return Node::blank(label);
            }
        }
    }

    fn resolve_iriref(&self, raw: &str, line: usize, col: usize) -> Result<String, ParseError> {
        if is_absolute_iri(raw) {
            return Ok(raw.to_string());
        }
        match &self.base {
            Some(base) => Ok(resolve_iri(base, raw)),
            None => err(
                line,
                col,
                format!("relative IRI <{raw}> with no @base in effect"),
            ),
        }
    }

    fn resolve_pname(&self, prefix: &str, local: &str, line: usize, col: usize) -> Result<String, ParseError> {
        match self.prefixes.get(prefix) {
            Some(ns) => Ok(format!("{ns}{local}")),
            None => err(line, col, format!("undefined prefix '{prefix}:'")),
        }
    }

    fn parse_document(mut self) -> Result<Graph, ParseError> {
        loop {
            match &self.cur().tok {
                Tok::Eof => break,
                Tok::PrefixDirective => {
                    self.advance();
                    let cur = self.advance();
                    let (prefix, local) = match cur.tok {
                        Tok::PName { prefix, local } => (prefix, local),
                        other => {
                            return err(
                                cur.line,
                                cur.col,
                                format!("expected prefix label but found {}", other.describe()),
                            )
                        }
                    };
                    if !local.is_empty() {
                        return err(cur.line, cur.col, "prefix label must end with ':'");
                    }
                    let iri_tok = self.advance();
                    let ns = match iri_tok.tok {
                        Tok::IriRef(raw) => self.resolve_iriref(&raw, iri_tok.line, iri_tok.col)?,
                        other => {
                            return err(
                                iri_tok.line,
                                iri_tok.col,
                                format!("expected IRI reference but found {}", other.describe()),
                            )
                        }
                    };
                    self.expect(Tok::Dot)?;
                    self.prefixes.insert(prefix.clone(), ns.clone());
                    self.graph.set_prefix(prefix, ns);
                }
                Tok::BaseDirective => {
                    self.advance();
                    let iri_tok = self.advance();
                    let base = match iri_tok.tok {
                        Tok::IriRef(raw) => self.resolve_iriref(&raw, iri_tok.line, iri_tok.col)?,
                        other => {
                            return err(
                                iri_tok.line,
                                iri_tok.col,
                                format!("expected IRI reference but found {}", other.describe()),
                            )
                        }
                    };
                    self.expect(Tok::Dot)?;
                    self.base = Some(base);
                }
                _ => {
                    self.parse_triples()?;
                    self.expect(Tok::Dot)?;
                }
            }
        }
        Ok(self.graph)
    }

    fn parse_triples(&mut self) -> Result<(), ParseError> {
        let cur = self.cur().clone();
        let subject = match &cur.tok {
            Tok::LBracket => {
                let node = self.parse_blank_property_list()?;
                // a bare '[ ... ]' subject may omit the outer predicate list
                if self.cur().tok == Tok::Dot {
                    return Ok(());
                }
                node
            }
            _ => self.parse_subject()?,
        };
        self.parse_predicate_object_list(&subject)?;
        Ok(())
    }

    fn parse_subject(&mut self) -> Result<Node, ParseError> {
        let cur = self.advance();
        match cur.tok {
            Tok::IriRef(raw) => Ok(Node::iri(self.resolve_iriref(&raw, cur.line, cur.col)?)),
            Tok::PName { prefix, local } => Ok(Node::iri(
                self.resolve_pname(&prefix, &local, cur.line, cur.col)?,
            )),
            Tok::BlankLabel(label) => Ok(Node::blank(label)),
            other => err(
                cur.line,
                cur.col,
                format!("expected subject but found {}", other.describe()),
            ),
        }
    }

    fn parse_predicate_object_list(&mut self, subject: &Node) -> Result<(), ParseError> {
        loop {
            let predicate = self.parse_predicate()?;
            loop {
                let object = self.parse_object()?;
                let triple = Triple::new(subject.clone(), predicate.clone(), object)
                    .expect("parser produces well-formed triples");
                self.graph.insert(triple);
                if self.cur().tok == Tok::Comma {
                    self.advance();
                } else {
                    break;
                }
            }
            if self.cur().tok == Tok::Semi {
                // swallow repeated ';' and allow a trailing one
                while self.cur().tok == Tok::Semi {
                    self.advance();
                }
                if matches!(self.cur().tok, Tok::Dot | Tok::RBracket) {
                    break;
                }
            } else {
                break;
            }
        }
        Ok(())
    }

    fn parse_predicate(&mut self) -> Result<Node, ParseError> {
        let cur = self.advance();
        match cur.tok {
            Tok::A => Ok(Node::iri(crate::vocab::RDF_TYPE)),
            Tok::IriRef(raw) => Ok(Node::iri(self.resolve_iriref(&raw, cur.line, cur.col)?)),
            Tok::PName { prefix, local } => Ok(Node::iri(
                self.resolve_pname(&prefix, &local, cur.line, cur.col)?,
            )),
            other => err(
                cur.line,
                cur.col,
                format!("expected predicate but found {}", other.describe()),
            ),
        }
    }

    fn parse_object(&mut self) -> Result<Node, ParseError> {
        let cur = self.cur().clone();
        match &cur.tok {
            Tok::LBracket => self.parse_blank_property_list(),
            _ => {
                let cur = self.advance();
                match cur.tok {
                    Tok::IriRef(raw) => Ok(Node::iri(self.resolve_iriref(&raw, cur.line, cur.col)?)),
                    Tok::PName { prefix, local } => Ok(Node::iri(
                        self.resolve_pname(&prefix, &local, cur.line, cur.col)?,
                    )),
                    Tok::BlankLabel(label) => Ok(Node::blank(label)),
                    Tok::Str(value) => self.parse_literal_rest(value),
                    Tok::Integer(v) => Ok(Node::literal_typed(v, XSD_INTEGER)),
                    Tok::Decimal(v) => Ok(Node::literal_typed(v, XSD_DECIMAL)),
                    Tok::Double(v) => Ok(Node::literal_typed(v, XSD_DOUBLE)),
                    Tok::Bool(b) => Ok(Node::literal_typed(b.to_string(), XSD_BOOLEAN)),
                    other => err(
                        cur.line,
                        cur.col,
                        format!("expected object but found {}", other.describe()),
                    ),
                }
            }
        }
    }

    fn parse_literal_rest(&mut self, value: String) -> Result<Node, ParseError> {
        match self.cur().tok.clone() {
            Tok::LangTag(tag) => {
                self.advance();
                Ok(Node::literal_lang(value, tag))
            }
            Tok::CaretCaret => {
                self.advance();
                let cur = self.advance();
                let dt = match cur.tok {
                    Tok::IriRef(raw) => self.resolve_iriref(&raw, cur.line, cur.col)?,
                    Tok::PName { prefix, local } => {
                        self.resolve_pname(&prefix, &local, cur.line, cur.col)?
                    }
                    other => {
                        return err(
                            cur.line,
                            cur.col,
                            format!("expected datatype IRI but found {}", other.describe()),
                        )
                    }
                };
                Ok(Node::literal_typed(value, dt))
            }
            _ => Ok(Node::literal_str(value)),
        }
    }

    fn parse_blank_property_list(&mut self) -> Result<Node, ParseError> {
        self.expect(Tok::LBracket)?;
        let node = self.fresh_blank();
        if self.cur().tok == Tok::RBracket {
            self.advance();
            return Ok(node);
        }
        self.parse_predicate_object_list(&node)?;
        self.expect(Tok::RBracket)?;
        Ok(node)
    }
}

/// Parse a Turtle document into a [`Graph`]. The prefix map is populated
/// from `@prefix` directives and relative IRIs are resolved against
/// `@base` when present.
pub fn parse_turtle(text: &str) -> Result<Graph, ParseError> {
    let toks = Lexer::new(text).tokenize()?;
    let doc_labels: BTreeSet<String> = toks
        .iter()
        .filter_map(|s| match &s.tok {
            Tok::BlankLabel(l) => Some(l.clone()),
            _ => None,
        })
        .collect();
    let parser = Parser {
        toks,
        idx: 0,
        prefixes: HashMap::new(),
        base: None,
        graph: Graph::new(),
        anon_counter: 0,
        doc_labels,
    };
    parser.parse_document()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vocab::{RDF_TYPE, XSD_DECIMAL, XSD_INTEGER};

    #[test]
    fn minimal_document() {
        let g = parse_turtle("@prefix ex: <http://ex.org/> . ex:a ex:p ex:b .").unwrap();
        assert_eq!(g.len(), 1);
        let t = g.iter().next().unwrap();
        assert_eq!(t.subject, Node::iri("http://ex.org/a"));
        assert_eq!(t.predicate, Node::iri("http://ex.org/p"));
        assert_eq!(t.object, Node::iri("http://ex.org/b"));
    }

    #[test]
    fn undefined_prefix_is_an_error() {
        let e = parse_turtle("ex:a ex:p ex:b .").unwrap_err();
        assert!(e.message.contains("undefined prefix"), "{}", e);
        assert_eq!(e.line, 1);
        assert_eq!(e.col, 1);
    }

    // Hand-count: 3 (s1: a + two ';' predicates) + 2 (s1 object list ',')
    // + 3 (s2: typed literal, lang literal, plain) + 2 (blank node subject)
    // + 2 (anonymous '[ ]' as object, inner property) = 12 triples.
    const FIXTURE: &str = r#"
        @prefix ex: <http://ex.org/> .
        @prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
        ex:truck1 a ex:Truck ;
            ex:weight "1250"^^xsd:decimal ;
            ex:ownedBy ex:acme ;
            ex:visited ex:buffalo, ex:rome .
        ex:acme ex:name "Acme"@en ;
            ex:founded 1990 ;
            ex:motto "go" .
        _:route ex:start ex:buffalo ;
            ex:end ex:rome .
        ex:trip1 ex:leg [ ex:distance 42.5 ] .
    "#;

    #[test]
    fn twelve_triple_fixture() {
        let g = parse_turtle(FIXTURE).unwrap();
        assert_eq!(g.len(), 12);
        let weight = g
            .object(&Node::iri("http://ex.org/truck1"), "http://ex.org/weight")
            .unwrap();
        let lit = weight.as_literal().unwrap();
        assert_eq!(lit.lexical(), "1250");
        assert_eq!(lit.datatype(), XSD_DECIMAL);
        let founded = g
            .object(&Node::iri("http://ex.org/acme"), "http://ex.org/founded")
            .unwrap();
        assert_eq!(founded.as_literal().unwrap().datatype(), XSD_INTEGER);
    }

    #[test]
    fn base_resolution() {
        let g = parse_turtle("@base <http://ex.org/things/> . <a> <b> <../c> .").unwrap();
        let t = g.iter().next().unwrap();
        assert_eq!(t.subject, Node::iri("http://ex.org/things/a"));
        assert_eq!(t.object, Node::iri("http://ex.org/c"));
    }

    #[test]
    fn relative_iri_without_base_is_an_error() {
        let e = parse_turtle("<a> <http://e/p> <http://e/o> .").unwrap_err();
        assert!(e.message.contains("no @base"), "{}", e);
    }

    #[test]
    fn collections_are_rejected() {
        let e = parse_turtle("@prefix ex: <http://e/> . ex:a ex:p (1 2) .").unwrap_err();
        assert!(e.message.contains("collections"), "{}", e);
    }

    #[test]
    fn multiline_strings_are_rejected() {
        let e = parse_turtle("@prefix ex: <http://e/> . ex:a ex:p \"\"\"x\"\"\" .").unwrap_err();
        assert!(e.message.contains("multi-line"), "{}", e);
    }

    #[test]
    fn error_position_is_one_based() {
        let e = parse_turtle("@prefix ex: <http://e/> .\nex:a ex:p ,, .").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.col >= 10, "col was {}", e.col);
    }

    #[test]
    fn anonymous_blank_labels_avoid_document_labels() {
        let g = parse_turtle(
            "@prefix ex: <http://e/> . _:anon1 ex:p ex:a . ex:b ex:q [ ex:r ex:c ] .",
        )
        .unwrap();
        assert_eq!(g.len(), 3);
        let blanks: BTreeSet<String> = g
            .iter()
            .flat_map(|t| [t.subject, t.object])
            .filter_map(|n| match n {
                Node::Blank(l) => Some(l),
                _ => None,
            })
            .collect();
        assert_eq!(blanks.len(), 2, "document and generated labels must differ: {blanks:?}");
    }

    #[test]
    fn type_keyword() {
        let g = parse_turtle("@prefix ex: <http://e/> . ex:x a ex:T .").unwrap();
        assert_eq!(g.iter().next().unwrap().predicate, Node::iri(RDF_TYPE));
    }

    #[test]
    fn trailing_semicolon_allowed() {
        let g = parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ex:b ; .").unwrap();
        assert_eq!(g.len(), 1);
    }
}

//! The line-oriented algebra description format.
//!
//! ```text
//! name fx3
//! field Q                      # or: field F 5
//! vertex 1 2 3 4
//! arrow alpha 1 2
//! relation alpha*beta - gamma*delta
//! relation 2/3 beta*epsilon
//! option depth 12
//! option lambda_e 1,2,3
//! ```

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use noloop_core::field::{format_rational, parse_rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F {p}"),
        }
    }
}

/// One term `c · w` of a linear combination of words; an empty word is not allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coefficient: BigRational,
    pub word: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Options {
    pub cap: Option<usize>,
    pub depth: Option<usize>,
    pub cycles: Option<usize>,
    pub lambda_e: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraDescription {
    pub name: Option<String>,
    pub field: FieldSpec,
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    pub relations: Vec<Vec<Term>>,
    pub options: Options,
}

/// A syntax or semantic error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub token: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)?;
        if !self.token.is_empty() {
            write!(f, " (at `{}`)", self.token)?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: &line[s..i], column: line[..s].chars().count() + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], column: line[..s].chars().count() + 1 });
    }
    out
}

fn err(line: usize, column: usize, token: &str, message: impl Into<String>) -> ParseError {
    ParseError { line, column, token: token.to_string(), message: message.into() }
}

fn is_label(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_') && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn is_vertex_name(s: &str) -> bool {
    !s.is_empty() && !s.contains(',') && !s.contains('#') && !s.contains('*')
}

/// Splits a linear combination into signed terms. Positions are 1-based
/// columns within `line`, offset by `base` characters.
fn parse_terms(text: &str, line: usize, base: usize) -> Result<Vec<(BigRational, Vec<String>, usize)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let col = |i: usize| base + text[..chars.get(i).map_or(text.len(), |c| c.0)].chars().count() + 1;
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].1.is_whitespace() {
            *i += 1;
        }
    };
    let mut out = Vec::new();
    let mut first = true;
    loop {
        skip_ws(&mut i);
        if i >= chars.len() {
            if first {
                return Err(err(line, col(i), "", "expected a term"));
            }
            break;
        }
        let mut sign = BigRational::one();
        if chars[i].1 == '+' || chars[i].1 == '-' {
            if chars[i].1 == '-' {
                sign = -sign;
            }
            i += 1;
            skip_ws(&mut i);
        } else if !first {
            let rest: String = chars[i..].iter().map(|c| c.1).take_while(|c| !c.is_whitespace()).collect();
            return Err(err(line, col(i), &rest, "expected `+` or `-` between terms"));
        }
        first = false;
        let start = i;
        let mut coefficient = None;
        if i < chars.len() && chars[i].1.is_ascii_digit() {
            while i < chars.len() && (chars[i].1.is_ascii_digit() || chars[i].1 == '/') {
                i += 1;
            }
            let lit = &text[chars[start].0..chars.get(i).map_or(text.len(), |c| c.0)];
            let value = parse_rational(lit).ok_or_else(|| err(line, col(start), lit, "malformed coefficient"))?;
            coefficient = Some(value);
            skip_ws(&mut i);
            if i < chars.len() && chars[i].1 == '*' {
                i += 1;
                skip_ws(&mut i);
            }
        }
        let wstart = i;
        while i < chars.len() && !chars[i].1.is_whitespace() && chars[i].1 != '+' && chars[i].1 != '-' {
            i += 1;
        }
        let word = &text[chars.get(wstart).map_or(text.len(), |c| c.0)..chars.get(i).map_or(text.len(), |c| c.0)];
        if word.is_empty() {
            return Err(err(line, col(wstart), "", "expected a word"));
        }
        let mut labels = Vec::new();
        let mut offset = 0;
        for part in word.split('*') {
            if !is_label(part) {
                return Err(err(line, col(wstart) + offset, part, "expected an arrow label"));
            }
            labels.push(part.to_string());
            offset += part.chars().count() + 1;
        }
        out.push((sign * coefficient.unwrap_or_else(BigRational::one), labels, col(wstart)));
    }
    Ok(out)
}

fn parse_usize(tok: &Token<'_>, line: usize) -> Result<usize, ParseError> {
    tok.text.parse().map_err(|_| err(line, tok.column, tok.text, "expected a non-negative integer"))
}

/// Parses a description, checking labels and composability.
pub fn parse(text: &str) -> Result<AlgebraDescription, ParseError> {
    let mut d = AlgebraDescription {
        name: None,
        field: FieldSpec::Rational,
        vertices: Vec::new(),
        arrows: Vec::new(),
        relations: Vec::new(),
        options: Options::default(),
    };
    let mut saw_field = false;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(head) = toks.first() else { continue };
        let args = &toks[1..];
        let need = |n: usize| -> Result<(), ParseError> {
            if args.len() != n {
                let at = args.get(n).map_or(content.chars().count() + 1, |t| t.column);
                let tok = args.get(n).map_or("", |t| t.text);
                return Err(err(line, at, tok, format!("`{}` takes {} argument(s)", head.text, n)));
            }
            Ok(())
        };
        match head.text {
            "name" => {
                need(1)?;
                d.name = Some(args[0].text.to_string());
            }
            "field" => {
                if saw_field {
                    return Err(err(line, head.column, head.text, "field declared twice"));
                }
                saw_field = true;
                match args.first().map(|t| t.text) {
                    Some("Q") => {
                        need(1)?;
                        d.field = FieldSpec::Rational;
                    }
                    Some("F") => {
                        need(2)?;
                        let p = args[1].text.parse::<u64>().map_err(|_| err(line, args[1].column, args[1].text, "expected a prime"))?;
                        noloop_core::field::PrimeField::new(p).map_err(|e| err(line, args[1].column, args[1].text, e.to_string()))?;
                        d.field = FieldSpec::Prime(p);
                    }
                    _ => {
                        let t = args.first().copied().unwrap_or(Token { text: "", column: head.column + head.text.len() + 1 });
                        return Err(err(line, t.column, t.text, "expected `Q` or `F <prime>`"));
                    }
                }
            }
            "vertex" => {
                if args.is_empty() {
                    return Err(err(line, head.column, head.text, "`vertex` needs at least one name"));
                }
                for t in args {
                    if !is_vertex_name(t.text) {
                        return Err(err(line, t.column, t.text, "invalid vertex name"));
                    }
                    if d.vertices.iter().any(|v| v == t.text) {
                        return Err(err(line, t.column, t.text, "duplicate vertex"));
                    }
                    d.vertices.push(t.text.to_string());
                }
            }
            "arrow" => {
                need(3)?;
                let (l, s, t) = (args[0], args[1], args[2]);
                if !is_label(l.text) {
                    return Err(err(line, l.column, l.text, "invalid arrow label"));
                }
                if d.vertices.iter().any(|v| v == l.text) && l.text.starts_with("e_") {
                    return Err(err(line, l.column, l.text, "arrow label clashes with a trivial path"));
                }
                if d.arrows.iter().any(|a| a.0 == l.text) {
                    return Err(err(line, l.column, l.text, "duplicate arrow label"));
                }
                for v in [s, t] {
                    if !d.vertices.iter().any(|x| x == v.text) {
                        return Err(err(line, v.column, v.text, "unknown vertex"));
                    }
                }
                d.arrows.push((l.text.to_string(), s.text.to_string(), t.text.to_string()));
            }
            "relation" => {
                let base = head.column - 1 + head.text.chars().count();
                let rest = &content[content.char_indices().nth(base).map_or(content.len(), |c| c.0)..];
                let terms = parse_terms(rest, line, base)?;
                let mut rel = Vec::new();
                for (c, word, column) in terms {
                    check_word(&d, &word, line, column)?;
                    rel.push(Term { coefficient: c, word });
                }
                d.relations.push(rel);
            }
            "option" => {
                let Some(key) = args.first() else {
                    return Err(err(line, head.column, head.text, "`option` needs a key"));
                };
                let value = args.get(1);
                if args.len() != 2 {
                    let at = args.get(2).map_or(content.chars().count() + 1, |t| t.column);
                    return Err(err(line, at, args.get(2).map_or("", |t| t.text), format!("option `{}` takes one value", key.text)));
                }
                let value = value.expect("checked");
                match key.text {
                    "depth" => d.options.depth = Some(parse_usize(value, line)?),
                    "cap" => d.options.cap = Some(parse_usize(value, line)?),
                    "cycles" => d.options.cycles = Some(parse_usize(value, line)?),
                    "lambda_e" => {
                        let mut set = Vec::new();
                        let mut offset = 0;
                        for name in value.text.split(',') {
                            if !d.vertices.iter().any(|v| v == name) {
                                return Err(err(line, value.column + offset, name, "unknown vertex"));
                            }
                            set.push(name.to_string());
                            offset += name.chars().count() + 1;
                        }
                        d.options.lambda_e.push(set);
                    }
                    _ => return Err(err(line, key.column, key.text, "unknown option")),
                }
            }
            _ => return Err(err(line, head.column, head.text, "unknown directive")),
        }
    }
    Ok(d)
}

fn check_word(d: &AlgebraDescription, word: &[String], line: usize, column: usize) -> Result<(), ParseError> {
    let mut offset = 0;
    let mut prev_target: Option<&str> = None;
    for label in word {
        let Some(a) = d.arrows.iter().find(|a| &a.0 == label) else {
            return Err(err(line, column + offset, label, "unknown arrow label"));
        };
        if let Some(t) = prev_target {
            if t != a.1 {
                return Err(err(
                    line,
                    column + offset,
                    label,
                    format!("word is not composable: `{}` starts at {} but the previous arrow ends at {}", label, a.1, t),
                ));
            }
        }
        prev_target = Some(&a.2);
        offset += label.chars().count() + 1;
    }
    Ok(())
}

fn render_terms(terms: &[Term]) -> String {
    let mut s = String::new();
    for (i, t) in terms.iter().enumerate() {
        let neg = t.coefficient.is_negative();
        let abs = t.coefficient.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() || abs.is_zero() {
            s.push_str(&format_rational(&abs));
            s.push(' ');
        }
        s.push_str(&t.word.join("*"));
    }
    s
}

/// Canonical text form; `parse(&render(d)) == d`.
pub fn render(d: &AlgebraDescription) -> String {
    let mut s = String::new();
    if let Some(n) = &d.name {
        s.push_str(&format!("name {n}\n"));
    }
    s.push_str(&format!("field {}\n", d.field));
    if !d.vertices.is_empty() {
        s.push_str(&format!("vertex {}\n", d.vertices.join(" ")));
    }
    for (l, a, b) in &d.arrows {
        s.push_str(&format!("arrow {l} {a} {b}\n"));
    }
    for r in &d.relations {
        s.push_str(&format!("relation {}\n", render_terms(r)));
    }
    let o = &d.options;
    for (k, v) in [("cap", o.cap), ("depth", o.depth), ("cycles", o.cycles)] {
        if let Some(v) = v {
            s.push_str(&format!("option {k} {v}\n"));
        }
    }
    for set in &o.lambda_e {
        s.push_str(&format!("option lambda_e {}\n", set.join(",")));
    }
    s
}

/// A linear combination of words and trivial paths `e_<vertex>`, as used for
/// algebra elements on the command line.
pub fn parse_element_terms(d: &AlgebraDescription, text: &str) -> Result<Vec<(BigRational, Vec<String>)>, ParseError> {
    let terms = parse_terms(text, 1, 0)?;
    let mut out = Vec::new();
    for (c, word, column) in terms {
        if word.len() == 1 && !d.arrows.iter().any(|a| a.0 == word[0]) {
            if let Some(v) = word[0].strip_prefix("e_") {
                if d.vertices.iter().any(|x| x == v) {
                    out.push((c, word));
                    continue;
                }
            }
        }
        check_word(d, &word, 1, column)?;
        out.push((c, word));
    }
    Ok(out)
}

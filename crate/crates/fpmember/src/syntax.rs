//! Concrete syntax for presentations, words and graph-of-groups files.
//!
//! ```text
//! group T = < x, y | x^2 y^-3 >
//! group Z2 = < a, b | [a,b] >
//! ```
//!
//! Words are juxtaposed factors. A factor is a generator name, `1`, a
//! parenthesised word or a commutator `[u,v]`, optionally followed by `^n`.
//! A relator may be written as an equation `u = v`, meaning `u v^-1`.
//! `#` starts a comment.

use fpmember_core::graph::{GraphEdge, GraphOfGroups, GraphVertex};
use fpmember_core::{GeneratorMap, Letter, Presentation, Word};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
    Arrow,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let push = |tok, out: &mut Vec<Token>| out.push(Token { tok, line: li + 1, column });
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                push(Tok::Ident(chars[start..i].iter().collect()), &mut out);
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s.parse().map_err(|_| ParseError {
                    line: li + 1,
                    column,
                    message: format!("integer `{}` out of range", s),
                })?;
                push(Tok::Int(n), &mut out);
            } else if c == '-' && chars.get(i + 1) == Some(&'>') {
                push(Tok::Arrow, &mut out);
                i += 2;
            } else if "<>|,=^()[]-;:".contains(c) {
                push(Tok::Sym(c), &mut out);
                i += 1;
            } else {
                return Err(ParseError { line: li + 1, column, message: format!("unexpected character `{}`", c) });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = match self.toks.get(self.pos) {
            Some(t) => (t.line, t.column),
            None => self.toks.last().map_or((1, 1), |t| (t.line, t.column + 1)),
        };
        ParseError { line, column, message: message.into() }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let t = &self.toks[pos];
        ParseError { line: t.line, column: t.column, message: message.into() }
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.is_sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c)))
        }
    }

    fn expect_arrow(&mut self) -> Result<(), ParseError> {
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error("expected `->`"))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error("expected a name")),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected `{}`", kw))),
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        if !self.eat_sym('^') {
            return Ok(1);
        }
        let neg = self.eat_sym('-');
        let paren = self.eat_sym('(');
        let neg = if paren { self.eat_sym('-') ^ neg } else { neg };
        let n = match self.peek() {
            Some(Tok::Int(n)) => *n,
            _ => return Err(self.error("expected an integer exponent")),
        };
        self.pos += 1;
        if paren {
            self.expect_sym(')')?;
        }
        Ok(if neg { -n } else { n })
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::Sym('(')) | Some(Tok::Sym('[')))
    }

    /// A word over `names`; stops before any token that cannot start a factor.
    fn word(&mut self, names: &[String]) -> Result<Word, ParseError> {
        let mut w = Word::empty();
        while self.starts_factor() {
            let start = self.pos;
            let base = match self.peek().cloned() {
                Some(Tok::Ident(s)) => {
                    self.pos += 1;
                    name_to_word(names, &s).ok_or_else(|| self.error_at(start, format!("unknown letter `{}`", s)))?
                }
                Some(Tok::Int(1)) => {
                    self.pos += 1;
                    Word::empty()
                }
                Some(Tok::Int(n)) => return Err(self.error(format!("unexpected integer `{}`", n))),
                Some(Tok::Sym('(')) => {
                    self.pos += 1;
                    let inner = self.word(names)?;
                    self.expect_sym(')')?;
                    inner
                }
                _ => {
                    self.expect_sym('[')?;
                    let u = self.word(names)?;
                    self.expect_sym(',')?;
                    let v = self.word(names)?;
                    self.expect_sym(']')?;
                    Word::commutator(&u, &v)
                }
            };
            let e = self.exponent()?;
            w = w.mul(&base.pow(e));
        }
        Ok(w)
    }

    fn relator(&mut self, names: &[String]) -> Result<Word, ParseError> {
        if !self.starts_factor() {
            return Err(self.error("expected a word"));
        }
        let lhs = self.word(names)?;
        if self.eat_sym('=') {
            let rhs = self.word(names)?;
            return Ok(lhs.mul(&rhs.inverse()));
        }
        Ok(lhs)
    }

    /// `< g1, ... | r1, ... >`
    fn body(&mut self, name: Option<&str>) -> Result<Presentation, ParseError> {
        self.expect_sym('<')?;
        let mut names: Vec<String> = Vec::new();
        if !self.is_sym('|') {
            loop {
                let at = self.pos;
                let g = self.ident()?;
                if names.contains(&g) {
                    return Err(self.error_at(at, format!("duplicate generator `{}`", g)));
                }
                names.push(g);
                if !self.eat_sym(',') {
                    break;
                }
            }
        }
        let mut relators = Vec::new();
        if self.eat_sym('|') && !self.is_sym('>') {
            loop {
                relators.push(self.relator(&names)?);
                if !self.eat_sym(',') {
                    break;
                }
            }
        }
        self.expect_sym('>')?;
        Presentation::new(name, names, relators).map_err(|e| self.error(e.to_string()))
    }

    fn group(&mut self) -> Result<Presentation, ParseError> {
        self.keyword("group")?;
        let name = self.ident()?;
        self.expect_sym('=')?;
        self.body(Some(&name))
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }
}

/// Resolves a generator name, or a run of one-character generator names
/// written without spaces (`xy` for `x y`).
fn name_to_word(names: &[String], s: &str) -> Option<Word> {
    if let Some(g) = names.iter().position(|n| n == s) {
        return Some(Word::generator(g));
    }
    let letters: Option<Vec<Letter>> = s
        .chars()
        .map(|c| names.iter().position(|n| n.len() == 1 && n.starts_with(c)).map(Letter::positive))
        .collect();
    letters.map(Word::reduce)
}

/// Parses a single `group NAME = < ... | ... >` statement.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut p = Parser::new(text)?;
    let g = p.group()?;
    p.finish()?;
    Ok(g)
}

/// Parses any number of `group` statements.
pub fn parse_presentations(text: &str) -> Result<Vec<Presentation>, ParseError> {
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    while !p.at_end() {
        out.push(p.group()?);
    }
    Ok(out)
}

/// Parses a word over the generators of `p`.
pub fn parse_word(p: &Presentation, text: &str) -> Result<Word, ParseError> {
    let mut parser = Parser::new(text)?;
    let w = parser.word(p.generators())?;
    parser.finish()?;
    Ok(w)
}

/// Parses a comma-separated list of words; the empty string is the empty list.
pub fn parse_word_list(p: &Presentation, text: &str) -> Result<Vec<Word>, ParseError> {
    let mut parser = Parser::new(text)?;
    let mut out = Vec::new();
    while !parser.at_end() {
        out.push(parser.word(p.generators())?);
        if !parser.at_end() {
            parser.expect_sym(',')?;
        }
    }
    Ok(out)
}

/// Formats a presentation in the grammar accepted by [`parse_presentation`].
pub fn format_presentation(p: &Presentation) -> String {
    p.to_text()
}

/// Formats a word list as accepted by [`parse_word_list`].
pub fn format_word_list(p: &Presentation, ws: &[Word]) -> String {
    ws.iter().map(|w| p.format_word(w)).collect::<Vec<_>>().join(", ")
}

fn map_images(
    parser: &mut Parser,
    edge: &Presentation,
    target: &Presentation,
) -> Result<GeneratorMap, ParseError> {
    let mut images: Vec<Option<Word>> = vec![None; edge.rank()];
    loop {
        let at = parser.pos;
        let h = parser.ident()?;
        let g = edge
            .generator_index(&h)
            .ok_or_else(|| parser.error_at(at, format!("`{}` is not an edge generator", h)))?;
        parser.expect_arrow()?;
        let w = parser.word(target.generators())?;
        if images[g].replace(w).is_some() {
            return Err(parser.error_at(at, format!("image of `{}` given twice", h)));
        }
        if !parser.eat_sym(',') {
            break;
        }
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(g, w)| w.ok_or_else(|| parser.error(format!("no image for `{}`", edge.generators()[g]))))
        .collect::<Result<Vec<_>, _>>()?;
    GeneratorMap::new(edge, target, images).map_err(|e| parser.error(e.to_string()))
}

/// Parses a graph-of-groups description:
///
/// ```text
/// vertex A = < a, b | [a,b] >
/// edge t : A -> A = < h | > via h -> a ; h -> b
/// tree edge e : A -> B = < h | > via h -> a ; h -> c^2
/// ```
///
/// The images before `;` define the map into the source vertex group, those
/// after it the map into the target.
pub fn parse_gog(text: &str) -> Result<GraphOfGroups, ParseError> {
    let mut p = Parser::new(text)?;
    let mut g = GraphOfGroups { vertices: Vec::new(), edges: Vec::new() };
    while !p.at_end() {
        if p.is_keyword("vertex") {
            p.pos += 1;
            let at = p.pos;
            let name = p.ident()?;
            if g.vertices.iter().any(|v| v.name == name) {
                return Err(p.error_at(at, format!("duplicate vertex `{}`", name)));
            }
            p.expect_sym('=')?;
            let group = p.body(Some(&name))?;
            g.vertices.push(GraphVertex { name, group });
            continue;
        }
        let in_tree = p.is_keyword("tree");
        if in_tree {
            p.pos += 1;
        }
        p.keyword("edge")?;
        let name = p.ident()?;
        p.expect_sym(':')?;
        let vertex = |p: &mut Parser, g: &GraphOfGroups| -> Result<usize, ParseError> {
            let at = p.pos;
            let v = p.ident()?;
            g.vertices.iter().position(|x| x.name == v).ok_or_else(|| p.error_at(at, format!("unknown vertex `{}`", v)))
        };
        let source = vertex(&mut p, &g)?;
        p.expect_arrow()?;
        let target = vertex(&mut p, &g)?;
        p.expect_sym('=')?;
        let group = p.body(Some(&name))?;
        p.keyword("via")?;
        let source_map = if group.rank() == 0 {
            GeneratorMap::from_ranks(0, g.vertices[source].group.rank(), Vec::new()).expect("empty map")
        } else {
            map_images(&mut p, &group, &g.vertices[source].group)?
        };
        p.expect_sym(';')?;
        let target_map = if group.rank() == 0 {
            GeneratorMap::from_ranks(0, g.vertices[target].group.rank(), Vec::new()).expect("empty map")
        } else {
            map_images(&mut p, &group, &g.vertices[target].group)?
        };
        g.edges.push(GraphEdge { name, group, source, target, source_map, target_map, in_tree });
    }
    g.validate().map_err(|e| ParseError { line: 1, column: 1, message: e.to_string() })?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_style_groups() {
        let z2 = parse_presentation("group Z2 = < a, b | [a,b] >").unwrap();
        assert_eq!(z2.rank(), 2);
        assert_eq!(z2.relators().len(), 1);
        assert_eq!(z2.relators()[0].len(), 4);

        let t = parse_presentation("group T = < x, y | x^2 y^-3 >").unwrap();
        assert_eq!(t.relators()[0], Word::from_powers(&[(0, 2), (1, -3)]));

        let f2 = parse_presentation("group F2 = < a, b | >").unwrap();
        assert!(f2.relators().is_empty());
    }

    #[test]
    fn sugar() {
        let p = parse_presentation("group G = < x, y | (xy)^3, x = y^-1, 1, [x,y]^(-2) >").unwrap();
        assert_eq!(p.relators()[0], Word::from_powers(&[(0, 1), (1, 1)]).pow(3));
        assert_eq!(p.relators()[1], Word::from_powers(&[(0, 1), (1, 1)]));
        assert_eq!(p.relators().len(), 3);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_presentation("group G = < a, a | >").unwrap_err();
        assert_eq!((e.line, e.column), (1, 16));
        assert!(e.message.contains("duplicate"));

        let e = parse_presentation("group G = < a |\n  a b >").unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));
        assert!(e.message.contains("unknown letter"));

        let e = parse_presentation("group G = < a | a").unwrap_err();
        assert!(e.message.contains("`>`"));
    }

    #[test]
    fn round_trip() {
        for text in ["group Q8 = < i, j | i^4, i^2 j^-2, j i j^-1 i >", "group F = <  | >", "group Z = < t | >"] {
            let p = parse_presentation(text).unwrap();
            assert_eq!(parse_presentation(&format_presentation(&p)).unwrap(), p);
        }
    }

    #[test]
    fn word_lists() {
        let p = parse_presentation("group F2 = < a, b | >").unwrap();
        assert_eq!(parse_word_list(&p, "").unwrap(), Vec::<Word>::new());
        let ws = parse_word_list(&p, "a^2, b a b^-1, 1").unwrap();
        assert_eq!(ws.len(), 3);
        assert!(ws[2].is_empty());
        assert_eq!(format_word_list(&p, &ws), "a^2, b a b^-1, 1");
    }

    #[test]
    fn mapping_torus_file() {
        let g = parse_gog(
            "vertex A = < a, b | [a,b] >\n\
             edge t : A -> A = < h, k | [h,k] > via h -> a, k -> b ; h -> b, k -> a\n",
        )
        .unwrap();
        assert_eq!(g.vertices.len(), 1);
        assert_eq!(g.edges[0].target_map.images()[0], Word::generator(1));
        assert!(!g.edges[0].in_tree);

        let g = parse_gog(
            "vertex A = < x | x^2 >\nvertex B = < y | y^3 >\ntree edge e : A -> B = < | > via ; \n",
        )
        .unwrap();
        assert!(g.edges[0].in_tree);
        assert!(parse_gog("vertex A = < a | >\nedge e : A -> C = < h | > via h -> a ; h -> a").is_err());
    }
}

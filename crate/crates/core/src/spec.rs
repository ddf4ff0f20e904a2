//! Ring-spec language.
//!
//! A spec is a list of line-oriented declarations:
//!
//! ```text
//! # comment
//! group C3 = cyclic(3)                  # also dihedral(n), product(A, B), quotient(G, {0, 2})
//! ring A = Zn(4)                        # also product(A, B, ...)
//! graded R = matrix(trivial-grade(A) by C3, 2, sigma=[0, 1])
//! grade B by C2 { e: [0, 1], g: [0, 2] }
//! trivial-grade A by C3
//! ideal I = gen(R, [4])
//! ```
//!
//! Graded expressions: `trivial-grade(A) by G`, `grade A by G { key: [..], .. }`,
//! `matrix(X, n, sigma=[..])`, `triangular(X, n, sigma=[..])`, `groupring(X)`,
//! `subgroupring(X, H=[..])`, `regrade(X, H=[..])`,
//! `trivext(X, module=self)`, `trivext(X, module=quotient([..]))`,
//! `corner(X, f=i)`, `product(X, Y, ..)`, `quotient(X, [..])`,
//! `quotient(NAME, IDEAL)` and plain names. Ring elements are carrier
//! indices; group elements are indices or labels (`e`, `g`, `g^2`, `r`, `sr`).
//!
//! The bare statements `grade A by G {..}` and `trivial-grade A by G` declare
//! a graded ring under the ring's own name.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use sha2::{Digest, Sha256};

use crate::constructions::{
    corner, group_ring_graded, matrix_graded, product_graded, regrade_by_quotient, subgroup_group_ring,
    trivial_extension, triangular_graded, GradedBimodule, Shape,
};
use crate::error::{Error, Result};
use crate::graded::{graded_quotient, GradedRing, HomogeneousIdeal};
use crate::group::{FiniteGroup, GroupElem};
use crate::ring::FiniteRing;
use crate::set::{Elem, ElementSet};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

/// A name with its source position; equality ignores the position.
#[derive(Debug, Clone)]
pub struct Ident {
    pub name: String,
    pub pos: Pos,
}

impl PartialEq for Ident {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for Ident {}

impl Ident {
    pub fn new(name: &str) -> Self {
        Ident { name: name.to_string(), pos: Pos::default() }
    }
}

/// A group element, by index or by label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Key {
    Index(u32),
    Label(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupExpr {
    Cyclic(usize),
    Dihedral(usize),
    Product(Ident, Ident),
    Quotient(Ident, Vec<Key>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingExpr {
    Modular(u64),
    Product(Vec<Ident>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Module {
    Regular,
    Quotient(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientBy {
    Generators(Vec<u32>),
    Ideal(Ident),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GradedExpr {
    Name(Ident),
    Trivial { ring: Ident, group: Ident },
    Explicit { ring: Ident, group: Ident, components: Vec<(Key, Vec<u32>)> },
    Matrix { inner: Box<GradedExpr>, n: usize, sigma: Vec<Key>, shape: Shape },
    GroupRing(Box<GradedExpr>),
    SubgroupRing(Box<GradedExpr>, Vec<Key>),
    Regrade(Box<GradedExpr>, Vec<Key>),
    TrivExt(Box<GradedExpr>, Module),
    Corner(Box<GradedExpr>, u32),
    Product(Vec<GradedExpr>),
    Quotient(Box<GradedExpr>, QuotientBy),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Group(GroupExpr),
    Ring(RingExpr),
    Graded(GradedExpr),
    Ideal { graded: Ident, generators: Vec<u32> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    pub name: Ident,
    pub decl: Decl,
    /// Written as a bare `grade` / `trivial-grade` statement.
    pub bare: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Group,
    Ring,
    Graded,
    Ideal,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Group => "a group",
            Kind::Ring => "a ring",
            Kind::Graded => "a graded ring",
            Kind::Ideal => "an ideal",
        })
    }
}

/// A parsed, name-resolved spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    pub statements: Vec<Statement>,
}

// ---------------------------------------------------------------- lexer

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(u64),
    Sym(char),
    Newline,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: Pos,
}

fn syntax(pos: Pos, msg: impl Into<String>) -> Error {
    Error::Syntax { line: pos.line, col: pos.col, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    for (ln, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos { line: ln + 1, col: i + 1 };
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s.parse().map_err(|_| syntax(pos, format!("number `{s}` is too large")))?;
                out.push(Token { tok: Tok::Num(n), pos });
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || "_-^'".contains(chars[i])) {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), pos });
            } else if "=(),[]{}:".contains(c) {
                match c {
                    '(' | '[' | '{' => depth += 1,
                    ')' | ']' | '}' => depth -= 1,
                    _ => {}
                }
                out.push(Token { tok: Tok::Sym(c), pos });
                i += 1;
            } else {
                return Err(syntax(pos, format!("unexpected character `{c}`")));
            }
        }
        if depth <= 0 {
            depth = 0;
            out.push(Token { tok: Tok::Newline, pos: Pos { line: ln + 1, col: chars.len() + 1 } });
        }
    }
    let end = Pos { line: text.lines().count().max(1), col: 1 };
    out.push(Token { tok: Tok::Eof, pos: end });
    Ok(out)
}

// ---------------------------------------------------------------- parser

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
        }
    }

    fn sym(&mut self, c: char) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            Err(syntax(t.pos, format!("expected `{c}`, found {}", Self::describe(&t.tok))))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<Ident> {
        let t = self.next();
        match t.tok {
            Tok::Ident(name) => Ok(Ident { name, pos: t.pos }),
            other => Err(syntax(t.pos, format!("expected a name, found {}", Self::describe(&other)))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) if s == kw => Ok(()),
            other => Err(syntax(t.pos, format!("expected `{kw}`, found {}", Self::describe(other)))),
        }
    }

    fn num(&mut self) -> Result<u64> {
        let t = self.next();
        match t.tok {
            Tok::Num(n) => Ok(n),
            other => Err(syntax(t.pos, format!("expected a number, found {}", Self::describe(&other)))),
        }
    }

    fn index(&mut self) -> Result<u32> {
        let pos = self.pos();
        let n = self.num()?;
        u32::try_from(n).map_err(|_| syntax(pos, format!("index {n} is too large")))
    }

    fn key(&mut self) -> Result<Key> {
        let t = self.next();
        match t.tok {
            Tok::Num(n) => u32::try_from(n).map(Key::Index).map_err(|_| syntax(t.pos, "index too large")),
            Tok::Ident(s) => Ok(Key::Label(s)),
            other => Err(syntax(t.pos, format!("expected a group element, found {}", Self::describe(&other)))),
        }
    }

    fn list<T>(&mut self, open: char, close: char, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        self.sym(open)?;
        let mut v = Vec::new();
        if self.eat(close) {
            return Ok(v);
        }
        loop {
            v.push(item(self)?);
            if self.eat(close) {
                return Ok(v);
            }
            self.sym(',')?;
        }
    }

    fn indices(&mut self) -> Result<Vec<u32>> {
        self.list('[', ']', Self::index)
    }

    fn keys(&mut self) -> Result<Vec<Key>> {
        let open = if *self.peek() == Tok::Sym('{') { '{' } else { '[' };
        let close = if open == '{' { '}' } else { ']' };
        self.list(open, close, Self::key)
    }

    /// `name =` for keyword arguments such as `sigma=`.
    fn named_arg(&mut self, name: &str) -> Result<()> {
        self.keyword(name)?;
        self.sym('=')
    }

    fn end_of_statement(&mut self) -> Result<()> {
        let t = self.next();
        match t.tok {
            Tok::Newline | Tok::Eof => Ok(()),
            other => Err(syntax(t.pos, format!("expected end of line, found {}", Self::describe(&other)))),
        }
    }

    fn statement(&mut self) -> Result<Statement> {
        let head = self.ident()?;
        let stmt = match head.name.as_str() {
            "group" => {
                let name = self.ident()?;
                self.sym('=')?;
                Statement { name, decl: Decl::Group(self.group_expr()?), bare: false }
            }
            "ring" => {
                let name = self.ident()?;
                self.sym('=')?;
                Statement { name, decl: Decl::Ring(self.ring_expr()?), bare: false }
            }
            "graded" => {
                let name = self.ident()?;
                self.sym('=')?;
                Statement { name, decl: Decl::Graded(self.graded_expr()?), bare: false }
            }
            "ideal" => {
                let name = self.ident()?;
                self.sym('=')?;
                self.keyword("gen")?;
                self.sym('(')?;
                let graded = self.ident()?;
                self.sym(',')?;
                let generators = self.indices()?;
                self.sym(')')?;
                Statement { name, decl: Decl::Ideal { graded, generators }, bare: false }
            }
            "grade" | "trivial-grade" => {
                let expr = self.grade_tail(&head.name)?;
                let name = match &expr {
                    GradedExpr::Trivial { ring, .. } | GradedExpr::Explicit { ring, .. } => ring.clone(),
                    _ => unreachable!(),
                };
                Statement { name, decl: Decl::Graded(expr), bare: true }
            }
            other => {
                return Err(syntax(
                    head.pos,
                    format!("unknown statement `{other}` (expected group, ring, graded, ideal, grade or trivial-grade)"),
                ))
            }
        };
        self.end_of_statement()?;
        Ok(stmt)
    }

    fn group_expr(&mut self) -> Result<GroupExpr> {
        let head = self.ident()?;
        self.sym('(')?;
        let e = match head.name.as_str() {
            "cyclic" => GroupExpr::Cyclic(self.num()? as usize),
            "dihedral" => GroupExpr::Dihedral(self.num()? as usize),
            "product" => {
                let a = self.ident()?;
                self.sym(',')?;
                GroupExpr::Product(a, self.ident()?)
            }
            "quotient" => {
                let g = self.ident()?;
                self.sym(',')?;
                GroupExpr::Quotient(g, self.keys()?)
            }
            other => return Err(syntax(head.pos, format!("unknown group constructor `{other}`"))),
        };
        self.sym(')')?;
        Ok(e)
    }

    fn ring_expr(&mut self) -> Result<RingExpr> {
        let head = self.ident()?;
        let e = match head.name.as_str() {
            "Zn" => {
                self.sym('(')?;
                let n = self.num()?;
                self.sym(')')?;
                RingExpr::Modular(n)
            }
            "product" => RingExpr::Product(self.list('(', ')', Self::ident)?),
            other => return Err(syntax(head.pos, format!("unknown ring constructor `{other}`"))),
        };
        Ok(e)
    }

    /// After `grade` or `trivial-grade`.
    fn grade_tail(&mut self, head: &str) -> Result<GradedExpr> {
        let ring = if self.eat('(') {
            let r = self.ident()?;
            self.sym(')')?;
            r
        } else {
            self.ident()?
        };
        self.keyword("by")?;
        let group = self.ident()?;
        if head == "trivial-grade" {
            return Ok(GradedExpr::Trivial { ring, group });
        }
        let components = self.list('{', '}', |p| {
            let k = p.key()?;
            p.sym(':')?;
            Ok((k, p.indices()?))
        })?;
        Ok(GradedExpr::Explicit { ring, group, components })
    }

    fn graded_expr(&mut self) -> Result<GradedExpr> {
        let head = self.ident()?;
        let name = head.name.clone();
        if name == "grade" || name == "trivial-grade" {
            return self.grade_tail(&name);
        }
        if *self.peek() != Tok::Sym('(') {
            return Ok(GradedExpr::Name(head));
        }
        self.sym('(')?;
        let e = match name.as_str() {
            "matrix" | "triangular" => {
                let inner = Box::new(self.graded_expr()?);
                self.sym(',')?;
                let n = self.num()? as usize;
                self.sym(',')?;
                self.named_arg("sigma")?;
                let sigma = self.keys()?;
                let shape = if name == "matrix" { Shape::Full } else { Shape::Upper };
                GradedExpr::Matrix { inner, n, sigma, shape }
            }
            "groupring" => GradedExpr::GroupRing(Box::new(self.graded_expr()?)),
            "subgroupring" | "regrade" => {
                let inner = Box::new(self.graded_expr()?);
                self.sym(',')?;
                self.named_arg("H")?;
                let h = self.keys()?;
                if name == "regrade" {
                    GradedExpr::Regrade(inner, h)
                } else {
                    GradedExpr::SubgroupRing(inner, h)
                }
            }
            "trivext" => {
                let inner = Box::new(self.graded_expr()?);
                self.sym(',')?;
                self.named_arg("module")?;
                let m = self.ident()?;
                let module = match m.name.as_str() {
                    "self" => Module::Regular,
                    "quotient" => {
                        self.sym('(')?;
                        let gens = self.indices()?;
                        self.sym(')')?;
                        Module::Quotient(gens)
                    }
                    other => return Err(syntax(m.pos, format!("unknown module `{other}` (expected self or quotient)"))),
                };
                GradedExpr::TrivExt(inner, module)
            }
            "corner" => {
                let inner = Box::new(self.graded_expr()?);
                self.sym(',')?;
                self.named_arg("f")?;
                GradedExpr::Corner(inner, self.index()?)
            }
            "product" => {
                let mut v = vec![self.graded_expr()?];
                while self.eat(',') {
                    v.push(self.graded_expr()?);
                }
                GradedExpr::Product(v)
            }
            "quotient" => {
                let inner = Box::new(self.graded_expr()?);
                self.sym(',')?;
                let by = if *self.peek() == Tok::Sym('[') {
                    QuotientBy::Generators(self.indices()?)
                } else {
                    QuotientBy::Ideal(self.ident()?)
                };
                GradedExpr::Quotient(inner, by)
            }
            _ => return Err(syntax(head.pos, format!("unknown graded constructor `{name}`"))),
        };
        self.sym(')')?;
        Ok(e)
    }
}

/// Parses without resolving names.
pub fn parse_syntax(text: &str) -> Result<Vec<Statement>> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let mut out = Vec::new();
    loop {
        match p.peek() {
            Tok::Eof => return Ok(out),
            Tok::Newline => {
                p.next();
            }
            _ => out.push(p.statement()?),
        }
    }
}

// ---------------------------------------------------------------- resolution

#[derive(Default)]
struct Scope {
    kinds: HashMap<String, Vec<Kind>>,
    ideal_owner: HashMap<String, String>,
}

impl Scope {
    fn expect(&self, id: &Ident, kind: Kind) -> Result<()> {
        match self.kinds.get(&id.name) {
            Some(ks) if ks.contains(&kind) => Ok(()),
            Some(ks) => Err(Error::TypeMismatch {
                line: id.pos.line,
                col: id.pos.col,
                msg: format!("`{}` is {}, expected {kind}", id.name, ks[0]),
            }),
            None => Err(Error::Unresolved { line: id.pos.line, col: id.pos.col, name: id.name.clone() }),
        }
    }

    fn declare(&mut self, id: &Ident, kind: Kind, bare: bool) -> Result<()> {
        let mismatch = |msg: String| Error::TypeMismatch { line: id.pos.line, col: id.pos.col, msg };
        if let Some(ks) = self.kinds.get(&id.name) {
            if !(bare && ks == &[Kind::Ring]) {
                return Err(mismatch(format!("`{}` is already declared as {}", id.name, ks[0])));
            }
        }
        self.kinds.entry(id.name.clone()).or_default().push(kind);
        Ok(())
    }

    fn graded(&self, e: &GradedExpr) -> Result<()> {
        match e {
            GradedExpr::Name(id) => self.expect(id, Kind::Graded),
            GradedExpr::Trivial { ring, group } | GradedExpr::Explicit { ring, group, .. } => {
                self.expect(ring, Kind::Ring)?;
                self.expect(group, Kind::Group)
            }
            GradedExpr::Matrix { inner, .. }
            | GradedExpr::GroupRing(inner)
            | GradedExpr::SubgroupRing(inner, _)
            | GradedExpr::Regrade(inner, _)
            | GradedExpr::TrivExt(inner, _)
            | GradedExpr::Corner(inner, _) => self.graded(inner),
            GradedExpr::Product(v) => v.iter().try_for_each(|x| self.graded(x)),
            GradedExpr::Quotient(inner, by) => {
                self.graded(inner)?;
                if let QuotientBy::Ideal(id) = by {
                    self.expect(id, Kind::Ideal)?;
                    let owner = &self.ideal_owner[&id.name];
                    if !matches!(&**inner, GradedExpr::Name(n) if &n.name == owner) {
                        return Err(Error::TypeMismatch {
                            line: id.pos.line,
                            col: id.pos.col,
                            msg: format!("ideal `{}` belongs to `{owner}`", id.name),
                        });
                    }
                }
                Ok(())
            }
        }
    }
}

fn resolve(statements: &[Statement]) -> Result<()> {
    let mut scope = Scope::default();
    for s in statements {
        let kind = match &s.decl {
            Decl::Group(GroupExpr::Product(a, b)) => {
                scope.expect(a, Kind::Group)?;
                scope.expect(b, Kind::Group)?;
                Kind::Group
            }
            Decl::Group(GroupExpr::Quotient(g, _)) => {
                scope.expect(g, Kind::Group)?;
                Kind::Group
            }
            Decl::Group(_) => Kind::Group,
            Decl::Ring(RingExpr::Product(v)) => {
                v.iter().try_for_each(|x| scope.expect(x, Kind::Ring))?;
                Kind::Ring
            }
            Decl::Ring(_) => Kind::Ring,
            Decl::Graded(e) => {
                scope.graded(e)?;
                Kind::Graded
            }
            Decl::Ideal { graded, .. } => {
                scope.expect(graded, Kind::Graded)?;
                scope.ideal_owner.insert(s.name.name.clone(), graded.name.clone());
                Kind::Ideal
            }
        };
        scope.declare(&s.name, kind, s.bare)?;
    }
    Ok(())
}

impl RingSpec {
    /// Parses and resolves; the first error carries its line and column.
    pub fn parse(text: &str) -> Result<Self> {
        let statements = parse_syntax(text)?;
        resolve(&statements)?;
        Ok(RingSpec { statements })
    }

    pub fn render(&self) -> String {
        render_statements(&self.statements)
    }

    /// Names of the graded rings, in declaration order.
    pub fn graded_names(&self) -> Vec<String> {
        self.statements
            .iter()
            .filter(|s| matches!(s.decl, Decl::Graded(_)))
            .map(|s| s.name.name.clone())
            .collect()
    }

    /// Evaluates every declaration in order.
    pub fn build(&self) -> Result<Env> {
        let mut env = Env::default();
        for s in &self.statements {
            env.eval(s).map_err(|e| locate(e, s.name.pos))?;
        }
        Ok(env)
    }
}

/// Hex SHA-256 of a spec text.
pub fn spec_digest(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn locate(e: Error, pos: Pos) -> Error {
    match e {
        Error::GroupMismatch(msg) => Error::TypeMismatch { line: pos.line, col: pos.col, msg },
        e @ (Error::Syntax { .. } | Error::Unresolved { .. } | Error::TypeMismatch { .. } | Error::Located { .. }) => e,
        e => Error::Located { line: pos.line, col: pos.col, source: Box::new(e) },
    }
}

// ---------------------------------------------------------------- rendering

fn render_keys(keys: &[Key], open: char, close: char) -> String {
    let parts: Vec<String> = keys
        .iter()
        .map(|k| match k {
            Key::Index(i) => i.to_string(),
            Key::Label(s) => s.clone(),
        })
        .collect();
    format!("{open}{}{close}", parts.join(", "))
}

fn render_indices(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn render_graded(e: &GradedExpr) -> String {
    match e {
        GradedExpr::Name(id) => id.name.clone(),
        GradedExpr::Trivial { ring, group } => format!("trivial-grade({}) by {}", ring.name, group.name),
        GradedExpr::Explicit { ring, group, components } => {
            let comps: Vec<String> = components
                .iter()
                .map(|(k, v)| format!("{}: {}", render_keys(std::slice::from_ref(k), ' ', ' ').trim(), render_indices(v)))
                .collect();
            format!("grade {} by {} {{ {} }}", ring.name, group.name, comps.join(", "))
        }
        GradedExpr::Matrix { inner, n, sigma, shape } => {
            let head = if *shape == Shape::Full { "matrix" } else { "triangular" };
            format!("{head}({}, {n}, sigma={})", render_graded(inner), render_keys(sigma, '[', ']'))
        }
        GradedExpr::GroupRing(inner) => format!("groupring({})", render_graded(inner)),
        GradedExpr::SubgroupRing(inner, h) => format!("subgroupring({}, H={})", render_graded(inner), render_keys(h, '[', ']')),
        GradedExpr::Regrade(inner, h) => format!("regrade({}, H={})", render_graded(inner), render_keys(h, '[', ']')),
        GradedExpr::TrivExt(inner, m) => {
            let m = match m {
                Module::Regular => "self".to_string(),
                Module::Quotient(v) => format!("quotient({})", render_indices(v)),
            };
            format!("trivext({}, module={m})", render_graded(inner))
        }
        GradedExpr::Corner(inner, f) => format!("corner({}, f={f})", render_graded(inner)),
        GradedExpr::Product(v) => {
            let parts: Vec<String> = v.iter().map(render_graded).collect();
            format!("product({})", parts.join(", "))
        }
        GradedExpr::Quotient(inner, by) => {
            let by = match by {
                QuotientBy::Generators(v) => render_indices(v),
                QuotientBy::Ideal(id) => id.name.clone(),
            };
            format!("quotient({}, {by})", render_graded(inner))
        }
    }
}

/// One statement per line, in canonical form.
pub fn render_statements(statements: &[Statement]) -> String {
    let mut out = String::new();
    for s in statements {
        let name = &s.name.name;
        let line = match &s.decl {
            Decl::Group(g) => {
                let rhs = match g {
                    GroupExpr::Cyclic(n) => format!("cyclic({n})"),
                    GroupExpr::Dihedral(n) => format!("dihedral({n})"),
                    GroupExpr::Product(a, b) => format!("product({}, {})", a.name, b.name),
                    GroupExpr::Quotient(g, h) => format!("quotient({}, {})", g.name, render_keys(h, '{', '}')),
                };
                format!("group {name} = {rhs}")
            }
            Decl::Ring(RingExpr::Modular(n)) => format!("ring {name} = Zn({n})"),
            Decl::Ring(RingExpr::Product(v)) => {
                let parts: Vec<&str> = v.iter().map(|x| x.name.as_str()).collect();
                format!("ring {name} = product({})", parts.join(", "))
            }
            Decl::Graded(GradedExpr::Trivial { ring, group }) if s.bare => {
                format!("trivial-grade {} by {}", ring.name, group.name)
            }
            Decl::Graded(e) if s.bare => render_graded(e),
            Decl::Graded(e) => format!("graded {name} = {}", render_graded(e)),
            Decl::Ideal { graded, generators } => {
                format!("ideal {name} = gen({}, {})", graded.name, render_indices(generators))
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------- evaluation

/// The objects declared by a spec.
#[derive(Debug, Default)]
pub struct Env {
    pub groups: BTreeMap<String, FiniteGroup>,
    pub rings: BTreeMap<String, FiniteRing>,
    pub graded: BTreeMap<String, GradedRing>,
    /// Ideal name -> (owning graded ring, ideal).
    pub ideals: BTreeMap<String, (String, HomogeneousIdeal)>,
    /// Graded ring names in declaration order.
    pub graded_order: Vec<String>,
}

fn mismatch(msg: String) -> Error {
    Error::TypeMismatch { line: 0, col: 0, msg }
}

fn group_key(g: &FiniteGroup, k: &Key) -> Result<GroupElem> {
    match k {
        Key::Index(i) if (*i as usize) < g.order() => Ok(GroupElem(*i)),
        Key::Index(i) => Err(mismatch(format!("group element {i} out of range (order {})", g.order()))),
        Key::Label(s) => g.find(s).ok_or_else(|| mismatch(format!("no group element labelled `{s}`"))),
    }
}

fn group_keys(g: &FiniteGroup, ks: &[Key]) -> Result<Vec<GroupElem>> {
    ks.iter().map(|k| group_key(g, k)).collect()
}

fn elements(order: usize, v: &[u32]) -> Result<Vec<Elem>> {
    v.iter()
        .map(|&i| {
            if (i as usize) < order {
                Ok(Elem(i))
            } else {
                Err(mismatch(format!("element index {i} out of range (order {order})")))
            }
        })
        .collect()
}

impl Env {
    fn eval(&mut self, s: &Statement) -> Result<()> {
        let name = s.name.name.clone();
        match &s.decl {
            Decl::Group(e) => {
                let g = match e {
                    GroupExpr::Cyclic(n) => FiniteGroup::cyclic(*n)?,
                    GroupExpr::Dihedral(n) => FiniteGroup::dihedral(*n)?,
                    GroupExpr::Product(a, b) => FiniteGroup::direct_product(&self.groups[&a.name], &self.groups[&b.name]),
                    GroupExpr::Quotient(g, h) => {
                        let g = &self.groups[&g.name];
                        g.quotient_group(&group_keys(g, h)?)?.0
                    }
                };
                self.groups.insert(name, g);
            }
            Decl::Ring(e) => {
                let r = match e {
                    RingExpr::Modular(n) => FiniteRing::modular(*n)?,
                    RingExpr::Product(v) => {
                        let rings: Vec<FiniteRing> = v.iter().map(|x| self.rings[&x.name].clone()).collect();
                        let size = rings.iter().try_fold(1usize, |acc, r| acc.checked_mul(r.order()));
                        if size.is_none_or(|s| s > crate::max_carrier()) {
                            return Err(Error::ResourceLimit("product ring exceeds the size cap".into()));
                        }
                        FiniteRing::product(&rings)?
                    }
                };
                self.rings.insert(name, r);
            }
            Decl::Graded(e) => {
                let r = self.graded_expr(e)?;
                self.graded.insert(name.clone(), r);
                self.graded_order.push(name);
            }
            Decl::Ideal { graded, generators } => {
                let r = &self.graded[&graded.name];
                let gens = elements(r.order(), generators)?;
                let ideal = HomogeneousIdeal::generated(r, &gens)?;
                self.ideals.insert(name, (graded.name.clone(), ideal));
            }
        }
        Ok(())
    }

    fn graded_expr(&self, e: &GradedExpr) -> Result<GradedRing> {
        match e {
            GradedExpr::Name(id) => Ok(self.graded[&id.name].clone()),
            GradedExpr::Trivial { ring, group } => {
                Ok(GradedRing::trivial(self.rings[&ring.name].clone(), self.groups[&group.name].clone()))
            }
            GradedExpr::Explicit { ring, group, components } => {
                let (ring, group) = (&self.rings[&ring.name], &self.groups[&group.name]);
                let n = ring.order();
                let mut comps = vec![ElementSet::from_iter_in(n, [Elem::ZERO]); group.order()];
                let mut seen = vec![false; group.order()];
                for (k, members) in components {
                    let g = group_key(group, k)?;
                    if std::mem::replace(&mut seen[g.idx()], true) {
                        return Err(mismatch(format!("component {} listed twice", group.label(g))));
                    }
                    for x in elements(n, members)? {
                        comps[g.idx()].insert(x);
                    }
                }
                GradedRing::build(ring.clone(), group.clone(), comps)
            }
            GradedExpr::Matrix { inner, n, sigma, shape } => {
                let r = self.graded_expr(inner)?;
                let sigma = group_keys(r.group(), sigma)?;
                match shape {
                    Shape::Full => matrix_graded(&r, *n, &sigma),
                    Shape::Upper => triangular_graded(&r, *n, &sigma),
                }
            }
            GradedExpr::GroupRing(inner) => {
                let r = self.graded_expr(inner)?;
                group_ring_graded(&r, &r.group().clone())
            }
            GradedExpr::SubgroupRing(inner, h) => {
                let r = self.graded_expr(inner)?;
                Ok(subgroup_group_ring(&r, &group_keys(r.group(), h)?)?.0)
            }
            GradedExpr::Regrade(inner, h) => {
                let r = self.graded_expr(inner)?;
                regrade_by_quotient(&r, &group_keys(r.group(), h)?)
            }
            GradedExpr::TrivExt(inner, m) => {
                let a = self.graded_expr(inner)?;
                let module = match m {
                    Module::Regular => GradedBimodule::regular(&a),
                    Module::Quotient(gens) => {
                        let ideal = HomogeneousIdeal::generated(&a, &elements(a.order(), gens)?)?;
                        GradedBimodule::quotient(&a, &ideal)?
                    }
                };
                trivial_extension(&a, &module)
            }
            GradedExpr::Corner(inner, f) => {
                let r = self.graded_expr(inner)?;
                corner(&r, elements(r.order(), &[*f])?[0])
            }
            GradedExpr::Product(v) => {
                let factors: Vec<GradedRing> = v.iter().map(|x| self.graded_expr(x)).collect::<Result<_>>()?;
                let size = factors.iter().try_fold(1usize, |acc, r| acc.checked_mul(r.order()));
                if size.is_none_or(|s| s > crate::max_carrier()) {
                    return Err(Error::ResourceLimit("product exceeds the size cap".into()));
                }
                product_graded(&factors)
            }
            GradedExpr::Quotient(inner, by) => {
                let r = self.graded_expr(inner)?;
                let ideal = match by {
                    QuotientBy::Generators(v) => HomogeneousIdeal::generated(&r, &elements(r.order(), v)?)?,
                    QuotientBy::Ideal(id) => self.ideals[&id.name].1.clone(),
                };
                Ok(graded_quotient(&r, &ideal)?.0)
            }
        }
    }
}

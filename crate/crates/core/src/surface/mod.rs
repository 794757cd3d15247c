//! Text syntax for `.haw` files.
//!
//! ```text
//! logic lehaw
//! def add : N -> N -> N := fun (x : N) (y : N) => rec[N] x (fun (a : N) (b : N) => S a) y
//! theorem zero_right (x : N) : add x 0 = x := refl x
//! ```

mod lexer;
mod parser;
mod printer;

use std::fmt;

use thiserror::Error;

use crate::syntax::{Context, Formula, Logic, Name, ProofTerm, Signature, Sort, Term, TermSubst};

pub use lexer::{is_keyword, KEYWORDS};
pub use parser::{parse_file, parse_formula, parse_proof, parse_sort, parse_term, ParseOptions};
pub use printer::judgment_line;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("{pos}: lexical error: {message}")]
    Lexical { pos: Pos, message: String },
    #[error("{pos}: parse error: {message}")]
    Parse { pos: Pos, message: String },
    #[error("{pos}: duplicate name `{name}`")]
    DuplicateName { pos: Pos, name: Name },
    #[error("{pos}: `{name}` is a reserved name (contains '#')")]
    ReservedName { pos: Pos, name: Name },
}

impl SurfaceError {
    pub(crate) fn lexical(pos: Pos, message: impl Into<String>) -> Self {
        SurfaceError::Lexical { pos, message: message.into() }
    }

    pub(crate) fn parse(pos: Pos, message: impl Into<String>) -> Self {
        SurfaceError::Parse { pos, message: message.into() }
    }

    pub fn pos(&self) -> Option<Pos> {
        match self {
            SurfaceError::Lexical { pos, .. }
            | SurfaceError::Parse { pos, .. }
            | SurfaceError::DuplicateName { pos, .. }
            | SurfaceError::ReservedName { pos, .. } => Some(*pos),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DefDecl {
    pub name: Name,
    pub sort: Sort,
    /// With earlier definitions already substituted.
    pub body: Term,
    pub pos: Pos,
}

#[derive(Clone, Debug)]
pub struct TheoremDecl {
    pub name: Name,
    pub sig: Signature,
    pub ctx: Context,
    pub goal: Formula,
    pub proof: ProofTerm,
    pub pos: Pos,
}

#[derive(Clone, Debug)]
pub enum Decl {
    Def(DefDecl),
    Theorem(TheoremDecl),
}

#[derive(Clone, Debug)]
pub struct SourceFile {
    pub logic: Logic,
    /// Set on files written by the translator; permits reserved names.
    pub generated: bool,
    pub decls: Vec<Decl>,
}

impl SourceFile {
    pub fn new(logic: Logic) -> Self {
        SourceFile { logic, generated: false, decls: Vec::new() }
    }

    pub fn defs(&self) -> impl Iterator<Item = &DefDecl> {
        self.decls.iter().filter_map(|d| match d {
            Decl::Def(d) => Some(d),
            _ => None,
        })
    }

    pub fn theorems(&self) -> impl Iterator<Item = &TheoremDecl> {
        self.decls.iter().filter_map(|d| match d {
            Decl::Theorem(t) => Some(t),
            _ => None,
        })
    }

    /// Maps every definition name to its expanded body.
    pub fn def_substitution(&self) -> TermSubst {
        self.defs().map(|d| (d.name.clone(), d.body.clone())).collect()
    }
}

//! Recursive-descent parser for `.rcic` sources.

use super::ast::*;
use super::error::{ParseError, Pos};
use super::lexer::{tokenize, Tok, Token};

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Accept identifiers with a prime or `_R` suffix, as found in printed
    /// translations.
    pub allow_reserved: bool,
}

pub fn parse(src: &str) -> Result<SourceFile, ParseError> {
    parse_with(src, ParseOptions::default())
}

pub fn parse_with(src: &str, opts: ParseOptions) -> Result<SourceFile, ParseError> {
    let mut p = Parser::new(src, opts)?;
    let mut decls = Vec::new();
    while p.peek() != &Tok::Eof {
        decls.push(p.decl()?);
    }
    Ok(SourceFile { decls })
}

/// Parses a single term, which must span the whole input.
pub fn parse_expr(src: &str, opts: ParseOptions) -> Result<Expr, ParseError> {
    let mut p = Parser::new(src, opts)?;
    let e = p.expr()?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(e)
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
}

fn starts_atom(t: &Tok) -> bool {
    matches!(t, Tok::Ident(_) | Tok::Sort(_) | Tok::LParen | Tok::Keyword("match"))
}

impl Parser {
    fn new(src: &str, opts: ParseOptions) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(src, opts.allow_reserved)?,
            i: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let j = (self.i + k).min(self.toks.len() - 1);
        &self.toks[j].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    fn advance(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn found(&self) -> String {
        self.peek().to_string()
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::one_of(self.pos(), expected, &self.found())
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<Pos, ParseError> {
        if self.peek() == &t {
            Ok(self.advance().pos)
        } else {
            Err(self.error(&[what]))
        }
    }

    fn keyword(&mut self, k: &'static str) -> Result<Pos, ParseError> {
        self.expect(Tok::Keyword(k), &format!("`{}`", k))
    }

    fn ident(&mut self) -> Result<Ident, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let pos = self.advance().pos;
                Ok(Ident { pos, name })
            }
            _ => Err(self.error(&["an identifier"])),
        }
    }

    fn decl(&mut self) -> Result<Decl, ParseError> {
        let pos = self.pos();
        match self.peek() {
            Tok::Keyword("inductive") => {
                self.advance();
                let name = self.ident()?;
                let params = self.binder_groups()?;
                self.expect(Tok::Colon, "`:`")?;
                let arity = self.expr()?;
                self.expect(Tok::ColonEq, "`:=`")?;
                let mut constructors = Vec::new();
                if !matches!(self.peek(), Tok::Dot) {
                    self.eat(&Tok::Bar);
                    loop {
                        let cname = self.ident()?;
                        self.expect(Tok::Colon, "`:`")?;
                        let ty = self.expr()?;
                        constructors.push(Constructor { name: cname, ty });
                        if !self.eat(&Tok::Bar) {
                            break;
                        }
                    }
                }
                self.expect(Tok::Dot, "`.`")?;
                Ok(Decl::Inductive {
                    pos,
                    name,
                    params,
                    arity,
                    constructors,
                })
            }
            Tok::Keyword("def") => {
                self.advance();
                let name = self.ident()?;
                let binders = self.binder_groups()?;
                self.expect(Tok::Colon, "`:`")?;
                let ty = self.expr()?;
                self.expect(Tok::ColonEq, "`:=`")?;
                let body = self.expr()?;
                self.expect(Tok::Dot, "`.`")?;
                let (ty, body) = if binders.is_empty() {
                    (ty, body)
                } else {
                    (
                        Expr::Forall(binders.clone(), Box::new(ty)),
                        Expr::Fun(binders, Box::new(body)),
                    )
                };
                Ok(Decl::Def { pos, name, ty, body })
            }
            Tok::Keyword("check") => {
                self.advance();
                let term = self.expr()?;
                self.expect(Tok::Dot, "`.`")?;
                Ok(Decl::Check { pos, term })
            }
            Tok::Keyword("param-check") => {
                self.advance();
                let name = self.ident()?;
                self.expect(Tok::Dot, "`.`")?;
                Ok(Decl::ParamCheck { pos, name })
            }
            _ => Err(self.error(&["`inductive`", "`def`", "`check`", "`param-check`"])),
        }
    }

    /// Zero or more `(x y : A)` groups.
    fn binder_groups(&mut self) -> Result<Vec<Binder>, ParseError> {
        let mut out = Vec::new();
        while self.peek() == &Tok::LParen {
            out.extend(self.typed_group()?);
        }
        Ok(out)
    }

    /// `(x y : A)`.
    fn typed_group(&mut self) -> Result<Vec<Binder>, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let mut names = vec![self.ident()?];
        while matches!(self.peek(), Tok::Ident(_)) {
            names.push(self.ident()?);
        }
        self.expect(Tok::Colon, "`:`")?;
        let ty = self.expr()?;
        self.expect(Tok::RParen, "`)`")?;
        Ok(names.into_iter().map(|name| Binder { name, ty: Some(ty.clone()) }).collect())
    }

    /// Binders of `forall`/`fun`: parenthesized groups, or a single bare `x y : A`.
    fn quantifier_binders(&mut self) -> Result<Vec<Binder>, ParseError> {
        if matches!(self.peek(), Tok::Ident(_)) {
            let mut names = Vec::new();
            while matches!(self.peek(), Tok::Ident(_)) {
                names.push(self.ident()?);
            }
            self.expect(Tok::Colon, "`:`")?;
            let ty = self.expr()?;
            return Ok(names.into_iter().map(|name| Binder { name, ty: Some(ty.clone()) }).collect());
        }
        if self.peek() != &Tok::LParen {
            return Err(self.error(&["`(`", "an identifier"]));
        }
        self.binder_groups()
    }

    /// Branch arguments: bare names or typed groups.
    fn loose_binders(&mut self) -> Result<Vec<Binder>, ParseError> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Tok::Ident(_) => out.push(Binder {
                    name: self.ident()?,
                    ty: None,
                }),
                Tok::LParen => out.extend(self.typed_group()?),
                _ => return Ok(out),
            }
        }
    }

    pub fn expr(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Keyword("forall") => {
                self.advance();
                let bs = self.quantifier_binders()?;
                self.expect(Tok::Comma, "`,`")?;
                let body = self.expr()?;
                Ok(Expr::Forall(bs, Box::new(body)))
            }
            Tok::Keyword("fun") => {
                self.advance();
                let bs = self.quantifier_binders()?;
                self.expect(Tok::FatArrow, "`=>`")?;
                let body = self.expr()?;
                Ok(Expr::Fun(bs, Box::new(body)))
            }
            Tok::Keyword("fix") => self.fix(),
            _ => {
                let lhs = self.app()?;
                if self.eat(&Tok::Arrow) {
                    let rhs = self.expr()?;
                    Ok(Expr::Arrow(Box::new(lhs), Box::new(rhs)))
                } else {
                    Ok(lhs)
                }
            }
        }
    }

    fn app(&mut self) -> Result<Expr, ParseError> {
        let head = self.atom()?;
        let mut args = Vec::new();
        while starts_atom(self.peek()) {
            args.push(self.atom()?);
        }
        Ok(if args.is_empty() {
            head
        } else {
            Expr::App(Box::new(head), args)
        })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Ident(_) => Ok(Expr::Var(self.ident()?)),
            Tok::Sort(s) => {
                let pos = self.advance().pos;
                Ok(Expr::Sort(pos, s))
            }
            Tok::LParen => {
                self.advance();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Keyword("match") => self.matche(),
            _ => Err(self.error(&["a term"])),
        }
    }

    fn matche(&mut self) -> Result<Expr, ParseError> {
        let pos = self.keyword("match")?;
        let scrutinee = self.expr()?;
        let as_name = if self.eat(&Tok::Keyword("as")) { Some(self.ident()?) } else { None };
        self.keyword("in")?;
        let ind = self.ident()?;
        let mut items = Vec::new();
        loop {
            match (self.peek(), self.peek_at(1), self.peek_at(2)) {
                (Tok::LParen, Tok::Ident(_), Tok::Colon) => {
                    self.advance();
                    let name = self.ident()?;
                    self.advance();
                    let ty = self.expr()?;
                    self.expect(Tok::RParen, "`)`")?;
                    items.push(InItem::Binder(Binder { name, ty: Some(ty) }));
                }
                (t, _, _) if starts_atom(t) => items.push(InItem::Term(self.atom()?)),
                _ => break,
            }
        }
        let motive = match self.peek() {
            Tok::Keyword("return") => {
                self.advance();
                Motive::Return {
                    as_name,
                    body: self.expr()?,
                }
            }
            Tok::Keyword("using") if as_name.is_none() => {
                self.advance();
                Motive::Using(self.expr()?)
            }
            _ if as_name.is_some() => return Err(self.error(&["`return`", "a term"])),
            _ => return Err(self.error(&["`return`", "`using`", "a term"])),
        };
        self.keyword("with")?;
        let mut branches = Vec::new();
        while self.eat(&Tok::Bar) {
            let ctor = self.ident()?;
            let args = self.loose_binders()?;
            self.expect(Tok::FatArrow, "`=>`")?;
            let body = self.expr()?;
            branches.push(MatchBranch { ctor, args, body });
        }
        if self.peek() != &Tok::Keyword("end") {
            return Err(self.error(&["`|`", "`end`"]));
        }
        self.advance();
        Ok(Expr::Match(Box::new(Match {
            pos,
            scrutinee,
            ind,
            items,
            motive,
            branches,
        })))
    }

    fn struct_annot(&mut self) -> Result<StructArg, ParseError> {
        self.expect(Tok::LBrace, "`{struct`")?;
        self.keyword("struct")?;
        let arg = match self.peek().clone() {
            Tok::Num(n) => StructArg::Index(self.advance().pos, n),
            Tok::Ident(_) => StructArg::Name(self.ident()?),
            _ => return Err(self.error(&["an identifier", "a number"])),
        };
        self.expect(Tok::RBrace, "`}`")?;
        Ok(arg)
    }

    fn fix(&mut self) -> Result<Expr, ParseError> {
        let pos = self.keyword("fix")?;
        let name = self.ident()?;
        if self.eat(&Tok::Colon) {
            let ty = self.expr()?;
            let struct_arg = self.struct_annot()?;
            self.expect(Tok::ColonEq, "`:=`")?;
            let body = self.expr()?;
            return Ok(Expr::Fix(Box::new(Fix {
                pos,
                name,
                binders: Vec::new(),
                struct_arg,
                ty,
                body,
            })));
        }
        let binders = self.binder_groups()?;
        if binders.is_empty() {
            return Err(self.error(&["`(`", "`:`"]));
        }
        let struct_arg = self.struct_annot()?;
        self.expect(Tok::Colon, "`:`")?;
        let ty = self.expr()?;
        self.expect(Tok::ColonEq, "`:=`")?;
        let body = self.expr()?;
        Ok(Expr::Fix(Box::new(Fix {
            pos,
            name,
            binders,
            struct_arg,
            ty,
            body,
        })))
    }
}

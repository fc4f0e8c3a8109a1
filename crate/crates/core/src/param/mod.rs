//! The parametricity translation and an executable abstraction theorem.
//!
//! Every variable `x` is related to its primed copy `x'` by the witness
//! `x_R`; types become relations, inductives become inductive relations
//! (`I_R`, with constructors `c_R`), and definitions `d` get a translated
//! companion `d_R : [T] d d`.

mod error;
mod names;
mod translate;

use std::collections::BTreeSet;

use log::debug;

pub use error::ParamError;
pub use names::{global, hat_sort, primed, witness, NameTriple};
pub use translate::{prime, translate, translate_context, translate_inductive, TranslatedInductive};

use crate::kernel::{beta_nf, subtype, Checker, EliminationMode};
use crate::syntax::{Context, Definition, GlobalEnv, Name, Term};

/// A source environment together with its translation.
///
/// The target holds every source global, the translation of every
/// inductive (added eagerly) and the translations of the definitions that
/// have been needed so far (added on demand and kept).
#[derive(Clone, Debug)]
pub struct ParamEnv {
    source: GlobalEnv,
    target: GlobalEnv,
    synced: usize,
    inductives: Vec<TranslatedInductive>,
}

impl ParamEnv {
    pub fn new(env: &GlobalEnv) -> Result<Self, ParamError> {
        let mut pe = ParamEnv {
            source: GlobalEnv::new(),
            target: GlobalEnv::new(),
            synced: 0,
            inductives: Vec::new(),
        };
        pe.sync(env)?;
        Ok(pe)
    }

    /// Catches up with globals added to `env` since the last call. `env`
    /// must extend the environment this was built from.
    pub fn sync(&mut self, env: &GlobalEnv) -> Result<(), ParamError> {
        self.source = env.clone();
        let names: Vec<Name> = env.names()[self.synced..].to_vec();
        for name in names {
            self.synced += 1;
            if let Some(d) = env.inductive(&name) {
                let d = (**d).clone();
                self.target.insert_inductive(d.clone());
                let mut deps = BTreeSet::new();
                collect_consts(&d.arity, &mut deps);
                for (_, c) in &d.constructors {
                    collect_consts(c, &mut deps);
                }
                for dep in deps {
                    self.ensure_definition(&dep)?;
                }
                let t = translate_inductive(&self.target, &d)?;
                self.target.insert_inductive(t.relation.clone());
                self.inductives.push(t);
            } else if let Some(def) = env.definition(&name) {
                self.target.insert_definition((**def).clone());
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &GlobalEnv {
        &self.source
    }

    /// The environment translated terms are checked in.
    pub fn target(&self) -> &GlobalEnv {
        &self.target
    }

    pub fn inductive(&self, name: &Name) -> Option<&TranslatedInductive> {
        self.inductives.iter().find(|t| &t.source == name)
    }

    pub fn inductives(&self) -> &[TranslatedInductive] {
        &self.inductives
    }

    /// Translates `t`, which must be well-typed in `ctx` with elimination
    /// restricted to small inductives. Translations of the definitions it
    /// uses are added to the target.
    pub fn translate_term(&mut self, ctx: &Context, t: &Term) -> Result<Term, ParamError> {
        Checker::new(&self.source, EliminationMode::Star)
            .infer(&mut ctx.clone(), t)
            .map_err(ParamError::Source)?;
        self.ensure_used(t)?;
        translate(&self.target, t)
    }

    pub fn translate_context(&mut self, ctx: &Context) -> Result<Context, ParamError> {
        for (_, a) in ctx.iter() {
            self.ensure_used(a)?;
        }
        translate_context(&self.target, ctx)
    }

    fn ensure_used(&mut self, t: &Term) -> Result<(), ParamError> {
        let mut deps = BTreeSet::new();
        collect_consts(t, &mut deps);
        for d in deps {
            self.ensure_definition(&d)?;
        }
        Ok(())
    }

    /// Adds `d_R : [T] d d := [body]` to the target, checking it first, and
    /// returns it.
    pub fn ensure_definition(&mut self, d: &Name) -> Result<Definition, ParamError> {
        let rname = global(d);
        if let Some(done) = self.target.definition(&rname) {
            return Ok((**done).clone());
        }
        let def = self.source.definition(d).cloned().ok_or_else(|| ParamError::NotADefinition(d.clone()))?;
        self.ensure_used(&def.ty)?;
        self.ensure_used(&def.body)?;
        let konst = Term::Const(d.clone());
        let ty = beta_nf(&Term::apps(translate(&self.target, &def.ty)?, [konst.clone(), konst]));
        let body = translate(&self.target, &def.body)?;
        let checker = Checker::new(&self.target, EliminationMode::Star);
        let fail = |error| ParamError::Translation {
            name: rname.clone(),
            error,
        };
        checker.infer_sort(&mut Context::new(), &ty).map_err(fail)?;
        checker.check(&mut Context::new(), &body, &ty).map_err(fail)?;
        let out = Definition { name: rname, ty, body };
        self.target.insert_definition(out.clone());
        Ok(out)
    }

    /// Checks, in the translated context, that `a : b`, `a' : b'` and
    /// `[a] : [b] a a'` (the last type beta-normalized), all with
    /// restricted elimination. Requires `ctx ⊢ a : b` in the source.
    pub fn check_abstraction(&mut self, ctx: &Context, a: &Term, b: &Term) -> Result<(), ParamError> {
        let source = Checker::new(&self.source, EliminationMode::Star);
        let ty = source.infer(&mut ctx.clone(), a).map_err(ParamError::Source)?;
        if !subtype(&self.source, &ty, b) {
            return Err(ParamError::Source(crate::kernel::TypeError::NotConvertible {
                term: a.clone(),
                expected: b.clone(),
                actual: ty,
            }));
        }
        self.ensure_used(a)?;
        self.ensure_used(b)?;
        let mut tctx = self.translate_context(ctx)?;
        let a_t = translate(&self.target, a)?;
        let b_t = translate(&self.target, b)?;
        let (a_p, b_p) = (prime(a), prime(b));
        let rel = beta_nf(&Term::apps(b_t, [a.clone(), a_p.clone()]));
        let checker = Checker::new(&self.target, EliminationMode::Star);
        let fail = |error| ParamError::Translation {
            name: Name::new(&a.to_string()),
            error,
        };
        checker.check(&mut tctx, a, b).map_err(fail)?;
        checker.check(&mut tctx, &a_p, &b_p).map_err(fail)?;
        checker.check(&mut tctx, &a_t, &rel).map_err(fail)
    }

    /// [`ParamEnv::check_abstraction`] for a global definition's body and type.
    pub fn check_definition(&mut self, d: &Name) -> Result<(), ParamError> {
        let def = self.source.definition(d).cloned().ok_or_else(|| ParamError::NotADefinition(d.clone()))?;
        self.check_abstraction(&Context::new(), &def.body, &def.ty).map_err(|e| match e {
            ParamError::Translation { error, .. } => ParamError::Translation { name: d.clone(), error },
            other => other,
        })
    }
}

/// The abstraction theorem as a check: if `ctx ⊢ a : b` with restricted
/// elimination, then the translation of `a` has type `[b] a a'` in the
/// translated context. A `false` on well-typed input indicates a defect.
pub fn abstraction_check(env: &GlobalEnv, ctx: &Context, a: &Term, b: &Term) -> bool {
    let r = ParamEnv::new(env).and_then(|mut pe| pe.check_abstraction(ctx, a, b));
    if let Err(e) = &r {
        debug!("abstraction check failed: {}", e);
    }
    r.is_ok()
}

fn collect_consts(t: &Term, out: &mut BTreeSet<Name>) {
    match t {
        Term::Const(d) => {
            out.insert(d.clone());
        }
        Term::Var(_) | Term::Sort(_) | Term::Ind(_) | Term::Constr(_) => {}
        Term::Prod(_, a, b) | Term::Lam(_, a, b) | Term::App(a, b) => {
            collect_consts(a, out);
            collect_consts(b, out);
        }
        Term::Case {
            scrutinee,
            params,
            motive,
            branches,
            ..
        } => {
            collect_consts(scrutinee, out);
            params.iter().for_each(|p| collect_consts(p, out));
            collect_consts(motive, out);
            branches.iter().for_each(|b| collect_consts(&b.body, out));
        }
        Term::Fix { ty, body, .. } => {
            collect_consts(ty, out);
            collect_consts(body, out);
        }
    }
}

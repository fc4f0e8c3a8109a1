//! Command-line driver: `rcic check`, `rcic translate` and `rcic param-check`.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use log::info;

use crate::frontend::{elaborate_decl, parse, print_inductive, CheckError, ElabDecl, ParseError, Pos};
use crate::frontend::ast::{Decl, SourceFile};
use crate::kernel::{
    beta_nf, declare_definition, declare_inductive, embed_sort, Checker, EliminationMode, TypeError,
};
use crate::param::{global, ParamEnv, ParamError};
use crate::syntax::{Context, GlobalEnv, Name, Sort, Term};

#[derive(Debug, Parser)]
#[command(name = "rcic", version, about = "Type checker and parametricity translator for CIC with a refined universe hierarchy")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Allow strong elimination over every inductive, not only small ones.
    #[arg(long, global = true)]
    pub full_elim: bool,
    /// Show the sort of each declared type and its image in plain CIC.
    #[arg(long, global = true)]
    pub print_universes: bool,
    /// Print translated bodies in beta-normal form.
    #[arg(long, global = true)]
    pub print_goldens: bool,
    /// Only translate this declaration.
    #[arg(long = "def", global = true, value_name = "NAME")]
    pub def: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Typecheck every declaration.
    Check { files: Vec<PathBuf> },
    /// Typecheck and print the translation of every declaration.
    Translate { files: Vec<PathBuf> },
    /// Run the abstraction check on every definition.
    ParamCheck { files: Vec<PathBuf> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Check,
    Translate,
    ParamCheck,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    pub inputs: Vec<PathBuf>,
    pub mode: EliminationMode,
    pub print_universes: bool,
    pub print_goldens: bool,
    pub def_filter: Option<String>,
}

impl RunConfig {
    pub fn new(command: CommandKind, inputs: Vec<PathBuf>) -> Self {
        RunConfig {
            command,
            inputs,
            mode: EliminationMode::Star,
            print_universes: false,
            print_goldens: false,
            def_filter: None,
        }
    }
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let (command, inputs) = match cli.command {
            Command::Check { files } => (CommandKind::Check, files),
            Command::Translate { files } => (CommandKind::Translate, files),
            Command::ParamCheck { files } => (CommandKind::ParamCheck, files),
        };
        RunConfig {
            command,
            inputs,
            mode: if cli.full_elim {
                EliminationMode::Full
            } else {
                EliminationMode::Star
            },
            print_universes: cli.print_universes,
            print_goldens: cli.print_goldens,
            def_filter: cli.def,
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

/// Runs one invocation, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut files: Vec<(String, SourceFile)> = Vec::new();
    let mut input_failed = false;
    for path in &config.inputs {
        let label = path.display().to_string();
        match fs::read_to_string(path) {
            Ok(src) => match parse(&src) {
                Ok(f) => files.push((label, f)),
                Err(e) => {
                    report_parse(err, &label, &e);
                    input_failed = true;
                }
            },
            Err(e) => {
                let _ = writeln!(err, "{}: error: cannot read file: {}", label, e);
                input_failed = true;
            }
        }
    }
    if input_failed {
        return EXIT_INPUT_ERROR;
    }

    let mut session = Session {
        config,
        env: GlobalEnv::new(),
        param: None,
        out,
        err,
        failed: false,
    };
    for (label, file) in &files {
        info!("processing {} ({} declarations)", label, file.decls.len());
        for d in &file.decls {
            session.declaration(label, d.pos(), d);
        }
    }
    if config.command == CommandKind::ParamCheck {
        session.param_check_all();
    }
    if session.failed {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    }
}

fn report_parse(err: &mut dyn Write, label: &str, e: &ParseError) {
    let msg = e.to_string();
    let detail = msg.strip_prefix(&format!("{}: ", e.pos)).unwrap_or(&msg);
    let _ = writeln!(err, "{}:{}: parse error: {}", label, e.pos, detail);
}

struct Session<'a> {
    config: &'a RunConfig,
    env: GlobalEnv,
    param: Option<ParamEnv>,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    failed: bool,
}

impl Session<'_> {
    fn error(&mut self, label: &str, pos: Pos, e: &TypeError) {
        self.failed = true;
        let _ = writeln!(self.err, "{}:{}: error[{}]: {}", label, pos, e.kind(), e);
    }

    fn param_error(&mut self, label: &str, pos: Pos, e: &ParamError) {
        self.failed = true;
        let _ = writeln!(self.err, "{}:{}: translation error: {}", label, pos, e);
    }

    fn declaration(&mut self, label: &str, pos: Pos, d: &Decl) {
        let decl = match elaborate_decl(&self.env, d) {
            Ok(decl) => decl,
            Err(CheckError { pos, error }) => return self.error(label, pos, &error),
        };
        let mode = self.config.mode;
        match decl {
            ElabDecl::Inductive(ind) => {
                let name = ind.name.clone();
                let arity = ind.arity.clone();
                if let Err(e) = declare_inductive(&mut self.env, ind, mode) {
                    return self.error(label, pos, &e);
                }
                let sort = conclusion_sort(&arity);
                self.print_line(&name.to_string(), &arity, sort);
                if self.config.command == CommandKind::Translate {
                    self.translate_inductive(label, pos, &name);
                }
            }
            ElabDecl::Definition { name, ty, body } => {
                if let Err(e) = declare_definition(&mut self.env, name.clone(), ty.clone(), body, mode) {
                    return self.error(label, pos, &e);
                }
                if self.config.command != CommandKind::ParamCheck {
                    self.print_typing(&name.to_string(), &ty);
                }
                if self.config.command == CommandKind::Translate {
                    self.translate_definition(label, pos, &name);
                }
            }
            ElabDecl::Check(t) => match Checker::new(&self.env, mode).infer(&mut Context::new(), &t) {
                Ok(ty) => {
                    if self.config.command != CommandKind::ParamCheck {
                        self.print_typing(&t.to_string(), &ty)
                    }
                }
                Err(e) => self.error(label, pos, &e),
            },
            ElabDecl::ParamCheck(name) => {
                if self.config.command != CommandKind::ParamCheck {
                    self.param_check(label, pos, &name);
                }
            }
        }
    }

    fn print_typing(&mut self, subject: &str, ty: &Term) {
        let sort = sort_of(&self.env, self.config.mode, ty).ok();
        self.print_line(subject, ty, sort);
    }

    /// `subject : ty`, annotated with `sort` and its plain CIC image when
    /// universes are requested.
    fn print_line(&mut self, subject: &str, ty: &Term, sort: Option<Sort>) {
        if self.config.command == CommandKind::ParamCheck {
            return;
        }
        let mut line = format!("{} : {}", subject, ty);
        if let (true, Some(s)) = (self.config.print_universes, sort) {
            line.push_str(&format!("  (* sort {}, CIC {} *)", s, embed_sort(s)));
        }
        let _ = writeln!(self.out, "{}", line);
    }

    /// The translation state, brought up to date with the environment.
    fn param_env(&mut self) -> Result<&mut ParamEnv, ParamError> {
        match &mut self.param {
            Some(pe) => pe.sync(&self.env)?,
            None => self.param = Some(ParamEnv::new(&self.env)?),
        }
        Ok(self.param.as_mut().expect("just initialized"))
    }

    fn wanted(&self, name: &Name) -> bool {
        self.config.def_filter.as_deref().is_none_or(|f| f == name.as_str())
    }

    fn translate_inductive(&mut self, label: &str, pos: Pos, name: &Name) {
        let wanted = self.wanted(name);
        let text = match self.param_env() {
            Ok(pe) => pe.inductive(name).map(|t| print_inductive(&t.relation)),
            Err(e) => return self.param_error(label, pos, &e),
        };
        if let (true, Some(text)) = (wanted, text) {
            let _ = writeln!(self.out, "{}", text);
        }
    }

    fn translate_definition(&mut self, label: &str, pos: Pos, name: &Name) {
        if !self.wanted(name) {
            return;
        }
        let goldens = self.config.print_goldens;
        let def = match self.param_env().and_then(|pe| pe.ensure_definition(name)) {
            Ok(def) => def,
            Err(e) => return self.param_error(label, pos, &e),
        };
        let body = if goldens { beta_nf(&def.body) } else { def.body.clone() };
        let _ = writeln!(self.out, "def {} : {} := {}.", global(name), def.ty, body);
    }

    fn param_check(&mut self, label: &str, pos: Pos, name: &Name) {
        let r = self.param_env().and_then(|pe| pe.check_definition(name));
        match r {
            Ok(()) => {
                let _ = writeln!(self.out, "PASS {}", name);
            }
            Err(e) => {
                let _ = writeln!(self.out, "FAIL {}", name);
                self.param_error(label, pos, &e);
            }
        }
    }

    fn param_check_all(&mut self) {
        let defs: Vec<Name> = self
            .env
            .names()
            .iter()
            .filter(|n| self.env.definition(n).is_some())
            .cloned()
            .collect();
        for d in defs {
            self.param_check("<environment>", Pos::default(), &d);
        }
    }
}

fn conclusion_sort(arity: &Term) -> Option<Sort> {
    let mut t = arity;
    while let Term::Prod(_, _, b) = t {
        t = b;
    }
    t.as_sort()
}

fn sort_of(env: &GlobalEnv, mode: EliminationMode, ty: &Term) -> Result<Sort, TypeError> {
    Checker::new(env, mode).infer_sort(&mut Context::new(), ty)
}


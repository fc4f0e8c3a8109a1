use thiserror::Error;

use crate::kernel::TypeError;
use crate::syntax::Name;

#[derive(Clone, Debug, Error)]
pub enum ParamError {
    /// The input is not well-typed under the restricted elimination rule,
    /// so it is outside the translation's domain.
    #[error("source term is rejected by the kernel: {0}")]
    Source(TypeError),
    #[error("no translation is available for `{0}`")]
    Untranslated(Name),
    #[error("`{0}` is not a definition")]
    NotADefinition(Name),
    /// A translated declaration or term failed to typecheck. This is a
    /// defect in the translation or the kernel.
    #[error("translation of `{name}` does not typecheck: {error}")]
    Translation { name: Name, error: TypeError },
}

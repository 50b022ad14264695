use anyhow::{bail, Context, Result};

pub const BUDGETS_VAR: &str = "ORDFORGE_BUDGETS";

/// Default budgets. `ORDFORGE_BUDGETS` overrides them and explicit flags
/// override both.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    pub depth: usize,
    pub width: u64,
    pub term_size: usize,
    pub base_size: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            depth: 8,
            width: 4,
            term_size: 6,
            base_size: 5,
        }
    }
}

impl Budgets {
    /// Applies `key=value` pairs separated by commas, e.g.
    /// `depth=12,width=2,term-size=5,base-size=4`.
    pub fn apply(mut self, src: &str) -> Result<Self> {
        for item in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .with_context(|| format!("budget `{item}` is not key=value"))?;
            let n: u64 = v
                .trim()
                .parse()
                .with_context(|| format!("budget `{item}`"))?;
            if n == 0 {
                bail!("budget `{}` must be positive", k.trim());
            }
            match k.trim() {
                "depth" => self.depth = n as usize,
                "width" => self.width = n,
                "term-size" => self.term_size = n as usize,
                "base-size" => self.base_size = n as usize,
                other => bail!("unknown budget `{other}`"),
            }
        }
        Ok(self)
    }

    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGETS_VAR) {
            Ok(src) => Budgets::default().apply(&src).context(BUDGETS_VAR),
            Err(_) => Ok(Budgets::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let b = Budgets::default().apply("depth=12, width=2").unwrap();
        assert_eq!((b.depth, b.width, b.term_size), (12, 2, 6));
        assert!(Budgets::default().apply("depth=0").is_err());
        assert!(Budgets::default().apply("speed=3").is_err());
    }
}

use std::fs;
use std::path::Path;

/// Default caps, overridable from a `key = value` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub search_cap: usize,
    pub window_radius: usize,
    pub tridiagonal_bound: usize,
    pub max_factor_len: usize,
    pub iet_window: usize,
    pub verify_samples: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            search_cap: singular_core::extremal::DEFAULT_CAP,
            window_radius: 32,
            tridiagonal_bound: singular_core::continuant::DEFAULT_TRIDIAGONAL_BOUND,
            max_factor_len: 8,
            iet_window: 4000,
            verify_samples: 200,
            seed: 2024,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Config::parse(&text)
    }

    /// Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Config, String> {
        let mut c = Config::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key = value", n + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let num = || {
                value
                    .parse::<u64>()
                    .map_err(|_| format!("config line {}: {value:?} is not a number", n + 1))
            };
            match key {
                "search_cap" => c.search_cap = num()? as usize,
                "window_radius" => c.window_radius = num()? as usize,
                "tridiagonal_bound" => c.tridiagonal_bound = num()? as usize,
                "max_factor_len" => c.max_factor_len = num()? as usize,
                "iet_window" => c.iet_window = num()? as usize,
                "verify_samples" => c.verify_samples = num()? as usize,
                "seed" => c.seed = num()?,
                _ => return Err(format!("config line {}: unknown key {key:?}", n + 1)),
            }
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let c = Config::parse("# caps\nsearch_cap = 9\n\nwindow_radius=5 # wide\n").unwrap();
        assert_eq!(c.search_cap, 9);
        assert_eq!(c.window_radius, 5);
        assert_eq!(c.iet_window, 4000);
        assert!(Config::parse("colour = red").unwrap_err().contains("unknown key"));
        assert!(Config::parse("seed = x").is_err());
        assert!(Config::parse("seed").is_err());
    }
}

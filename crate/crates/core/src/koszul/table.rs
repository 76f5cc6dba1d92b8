use std::collections::BTreeMap;
use std::fmt;

/// Homological window `k in [-homological, 0]` and internal window `d in [0, internal]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub homological: usize,
    pub internal: i64,
}

impl Window {
    pub fn new(homological: usize, internal: i64) -> Self {
        Window { homological, internal }
    }
}

/// Dimensions indexed by (homological degree `k <= 0`, internal degree `d >= 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedDimsTable {
    pub window: Window,
    entries: BTreeMap<(i64, i64), usize>,
}

impl BigradedDimsTable {
    pub fn zeros(window: Window) -> Self {
        let mut entries = BTreeMap::new();
        for k in -(window.homological as i64)..=0 {
            for d in 0..=window.internal {
                entries.insert((k, d), 0);
            }
        }
        BigradedDimsTable { window, entries }
    }

    pub fn get(&self, k: i64, d: i64) -> usize {
        self.entries.get(&(k, d)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, k: i64, d: i64, v: usize) {
        assert!(self.entries.contains_key(&(k, d)), "cell ({k},{d}) outside window");
        self.entries.insert((k, d), v);
    }

    pub fn add(&mut self, k: i64, d: i64, v: usize) {
        if let Some(x) = self.entries.get_mut(&(k, d)) {
            *x += v;
        }
    }

    /// Row `k` as dims in internal degrees `0..=internal`.
    pub fn row(&self, k: i64) -> Vec<usize> {
        (0..=self.window.internal).map(|d| self.get(k, d)).collect()
    }

    pub fn cells(&self) -> impl Iterator<Item = ((i64, i64), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// Cells where the two tables differ, as `((k, d), left, right)`.
    pub fn mismatches(&self, other: &Self) -> Vec<((i64, i64), usize, usize)> {
        let mut keys: Vec<(i64, i64)> = self.entries.keys().chain(other.entries.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|(k, d)| {
                let (a, b) = (self.get(k, d), other.get(k, d));
                (a != b).then_some(((k, d), a, b))
            })
            .collect()
    }
}

impl fmt::Display for BigradedDimsTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in (-(self.window.homological as i64)..=0).rev() {
            let row: Vec<String> = self.row(k).iter().map(|v| v.to_string()).collect();
            writeln!(f, "H^{k}: {}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Ext dimensions indexed by (total degree, internal degree), with the internal degree of
/// a determinant twist recorded separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtTable {
    pub max_total: i64,
    pub internal: (i64, i64),
    /// Keys use true internal degrees (twist included).
    entries: BTreeMap<(i64, i64), usize>,
    /// Internal degree of the twisting line bundle.
    pub twist_shift: i64,
}

impl ExtTable {
    pub fn zeros(max_total: i64, internal: (i64, i64), twist_shift: i64) -> Self {
        let mut entries = BTreeMap::new();
        for t in 0..=max_total {
            for d in internal.0..=internal.1 {
                entries.insert((t, d), 0);
            }
        }
        ExtTable { max_total, internal, entries, twist_shift }
    }

    pub fn get(&self, total: i64, d: i64) -> usize {
        self.entries.get(&(total, d)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, total: i64, d: i64, v: usize) {
        if let Some(x) = self.entries.get_mut(&(total, d)) {
            *x = v;
        }
    }

    pub fn add(&mut self, total: i64, d: i64, v: usize) {
        if let Some(x) = self.entries.get_mut(&(total, d)) {
            *x += v;
        }
    }

    /// Total dimension in one total degree.
    pub fn total_dim(&self, total: i64) -> usize {
        (self.internal.0..=self.internal.1).map(|d| self.get(total, d)).sum()
    }

    /// Dims in one total degree over the internal window.
    pub fn row(&self, total: i64) -> Vec<usize> {
        (self.internal.0..=self.internal.1).map(|d| self.get(total, d)).collect()
    }

    /// Nonzero cells keyed by internal degree with the twist removed.
    pub fn untwisted_cells(&self) -> Vec<((i64, i64), usize)> {
        self.entries.iter().filter(|(_, &v)| v > 0).map(|(&(t, d), &v)| ((t, d - self.twist_shift), v)).collect()
    }

    pub fn cells(&self) -> impl Iterator<Item = ((i64, i64), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn mismatches(&self, other: &Self) -> Vec<((i64, i64), usize, usize)> {
        let mut keys: Vec<(i64, i64)> = self.entries.keys().chain(other.entries.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|(t, d)| {
                let (a, b) = (self.get(t, d), other.get(t, d));
                (a != b).then_some(((t, d), a, b))
            })
            .collect()
    }
}

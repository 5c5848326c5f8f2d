//! Adaptive hypercube grid over the archive's objective space.

/// Index tuple of one hypercube, one coordinate per objective.
pub type CubeIndex = Vec<usize>;

/// Cubes are stored as a single mixed-radix number, first objective most
/// significant, so numeric order is lexicographic cube order.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    lower: Vec<f64>,
    upper: Vec<f64>,
    divisions: usize,
    /// Encoded cube of each archive member, parallel to the archive order.
    assignment: Vec<u128>,
    /// Member indices sorted by (cube, member).
    order: Vec<usize>,
    /// Occupied cubes in ascending order with their range in `order`.
    cells: Vec<(u128, usize, usize)>,
}

impl Grid {
    /// Builds a grid spanning the bounding box of `objectives`.
    ///
    /// An objective whose values are all equal gets a unit-width interval
    /// centred on that value.
    pub fn build<V: AsRef<[f64]>>(objectives: &[V], divisions: usize) -> Grid {
        assert!(!objectives.is_empty(), "grid needs at least one member");
        assert!(divisions > 0, "grid needs at least one division");
        let k = objectives[0].as_ref().len();
        assert!(
            (divisions as u128).checked_pow(k as u32).is_some(),
            "too many hypercubes to index"
        );
        let mut lower = vec![f64::INFINITY; k];
        let mut upper = vec![f64::NEG_INFINITY; k];
        for o in objectives {
            for (i, &v) in o.as_ref().iter().enumerate() {
                lower[i] = lower[i].min(v);
                upper[i] = upper[i].max(v);
            }
        }
        for i in 0..k {
            if lower[i] == upper[i] {
                lower[i] -= 0.5;
                upper[i] += 0.5;
            }
        }

        let mut grid = Grid {
            lower,
            upper,
            divisions,
            assignment: Vec::with_capacity(objectives.len()),
            order: (0..objectives.len()).collect(),
            cells: Vec::new(),
        };
        for o in objectives {
            let code = grid.encode(o.as_ref());
            grid.assignment.push(code);
        }
        let assignment = &grid.assignment;
        grid.order.sort_by_key(|&m| (assignment[m], m));
        let mut start = 0;
        while start < grid.order.len() {
            let code = assignment[grid.order[start]];
            let mut end = start + 1;
            while end < grid.order.len() && assignment[grid.order[end]] == code {
                end += 1;
            }
            grid.cells.push((code, start, end));
            start = end;
        }
        grid
    }

    fn coordinate(&self, i: usize, v: f64) -> usize {
        let width = (self.upper[i] - self.lower[i]) / self.divisions as f64;
        let raw = ((v - self.lower[i]) / width).floor();
        if raw <= 0.0 {
            0
        } else {
            (raw as usize).min(self.divisions - 1)
        }
    }

    fn encode(&self, objectives: &[f64]) -> u128 {
        objectives.iter().enumerate().fold(0, |acc, (i, &v)| {
            acc * self.divisions as u128 + self.coordinate(i, v) as u128
        })
    }

    fn encode_index(&self, cube: &[usize]) -> Option<u128> {
        let mut acc = 0u128;
        for &c in cube {
            if c >= self.divisions {
                return None;
            }
            acc = acc * self.divisions as u128 + c as u128;
        }
        Some(acc)
    }

    fn decode(&self, mut code: u128) -> CubeIndex {
        let d = self.divisions as u128;
        let mut cube = vec![0; self.lower.len()];
        for c in cube.iter_mut().rev() {
            *c = (code % d) as usize;
            code /= d;
        }
        cube
    }

    /// Hypercube containing `objectives`, clamped onto the grid.
    pub fn locate(&self, objectives: &[f64]) -> CubeIndex {
        objectives
            .iter()
            .enumerate()
            .map(|(i, &v)| self.coordinate(i, v))
            .collect()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn divisions(&self) -> usize {
        self.divisions
    }

    pub fn cube_of(&self, member: usize) -> CubeIndex {
        self.decode(self.assignment[member])
    }

    /// Occupied cubes with their member lists, in lexicographic cube order.
    pub fn cells(&self) -> impl Iterator<Item = (CubeIndex, &[usize])> + '_ {
        self.cells
            .iter()
            .map(|&(code, a, b)| (self.decode(code), &self.order[a..b]))
    }

    /// Member lists of the occupied cubes, in the same order as [`Grid::cells`].
    pub fn cell_members(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.cells.iter().map(|&(_, a, b)| &self.order[a..b])
    }

    pub fn occupancy(&self, cube: &[usize]) -> usize {
        let Some(code) = self.encode_index(cube) else {
            return 0;
        };
        self.cells
            .binary_search_by_key(&code, |c| c.0)
            .map_or(0, |i| self.cells[i].2 - self.cells[i].1)
    }

    pub fn member_count(&self) -> usize {
        self.assignment.len()
    }

    /// Most crowded cube; ties go to the lexicographically smallest index.
    pub fn most_crowded(&self) -> Option<(CubeIndex, &[usize])> {
        let mut best: Option<(u128, usize, usize)> = None;
        for &c in &self.cells {
            if best.is_none_or(|b| c.2 - c.1 > b.2 - b.1) {
                best = Some(c);
            }
        }
        best.map(|(code, a, b)| (self.decode(code), &self.order[a..b]))
    }
}

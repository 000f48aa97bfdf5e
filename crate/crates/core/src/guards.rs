/// Resource limits for the exhaustive searches.
///
/// Every enumeration or exact search checks the relevant field before it
/// starts and fails with [`crate::Error::ResourceLimit`] instead of running
/// for hours. The defaults keep desk-scale runs within minutes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Guards {
    /// Largest ground set for full enumeration of all partitions (B_13 ~ 2.7e7).
    pub enum_n: usize,
    /// Largest number of partitions produced by a restricted enumeration.
    pub enum_count: u64,
    /// Largest number of candidate sets scanned by the spreadness engine.
    pub candidates: u64,
    /// Largest vertex count of a compatibility graph handed to the clique oracle.
    pub clique_vertices: usize,
    /// Largest number of maximum cliques collected for uniqueness checks.
    pub max_cliques: usize,
    /// Universe size below which covering numbers are always attempted.
    pub cover_universe: usize,
    /// Member count below which covering numbers are attempted on any universe.
    pub cover_members: usize,
    /// Largest family handed to the sunflower search.
    pub sunflower_members: usize,
    /// Largest (subfamily, set) search space for the no-spread-subfamily property.
    pub lemma_search: u64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            enum_n: 13,
            enum_count: 10_000_000,
            candidates: 10_000_000,
            clique_vertices: 3000,
            max_cliques: 10_000,
            cover_universe: 64,
            cover_members: 10_000,
            sunflower_members: 100_000,
            lemma_search: 1_000_000,
        }
    }
}

impl Guards {
    /// Names accepted by [`Guards::set`], in declaration order.
    pub const NAMES: [&'static str; 9] = [
        "enum-n",
        "enum-count",
        "candidates",
        "clique-vertices",
        "max-cliques",
        "cover-universe",
        "cover-members",
        "sunflower-members",
        "lemma-search",
    ];

    /// Overrides a guard by its kebab-case name. Returns `false` for an unknown name.
    pub fn set(&mut self, name: &str, value: u64) -> bool {
        let v = value as usize;
        match name {
            "enum-n" => self.enum_n = v,
            "enum-count" => self.enum_count = value,
            "candidates" => self.candidates = value,
            "clique-vertices" => self.clique_vertices = v,
            "max-cliques" => self.max_cliques = v,
            "cover-universe" => self.cover_universe = v,
            "cover-members" => self.cover_members = v,
            "sunflower-members" => self.sunflower_members = v,
            "lemma-search" => self.lemma_search = value,
            _ => return false,
        }
        true
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{involution_from_cube, split_involution, Atlas, Cube, CubeClass, EigenKey, Involution, InvolutionClass};
use crate::error::{Error, Result};
use crate::rational::parse_q;
use crate::root_system::RootSystem;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionClassJson {
    pub id: String,
    pub degree: usize,
    pub size: u64,
    pub splitting_roots: Vec<usize>,
    pub representative_eigenspace: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeClassJson {
    pub id: String,
    pub rank: usize,
    pub size: u64,
    pub representative: Vec<usize>,
}

/// On-disk form of an [`Atlas`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasJson {
    #[serde(rename = "type")]
    pub type_spec: String,
    pub group_order: u128,
    pub involution_count: u64,
    pub involution_classes: Vec<InvolutionClassJson>,
    pub cube_classes: Vec<CubeClassJson>,
}

impl Atlas {
    pub fn to_json(&self) -> AtlasJson {
        AtlasJson {
            type_spec: self.rs.spec().to_string(),
            group_order: self.group_order,
            involution_count: self.involution_count,
            involution_classes: self
                .involution_classes
                .iter()
                .map(|c| InvolutionClassJson {
                    id: c.id.clone(),
                    degree: c.degree,
                    size: c.size,
                    splitting_roots: c.splitting.roots().to_vec(),
                    representative_eigenspace: c.representative.eigenspace_key().to_strings(),
                })
                .collect(),
            cube_classes: self
                .cube_classes
                .iter()
                .map(|c| CubeClassJson {
                    id: c.id.clone(),
                    rank: c.rank,
                    size: c.size,
                    representative: c.representative.roots().to_vec(),
                })
                .collect(),
        }
    }

    /// Rebuilds an atlas from its JSON form, re-checking every class.
    pub fn from_json(rs: &Arc<RootSystem>, json: &AtlasJson) -> Result<Atlas> {
        let corrupt = |what: &str| Error::Parse(format!("atlas for {}: {what}", rs.spec()));
        if json.type_spec != rs.spec().to_string() {
            return Err(corrupt("type mismatch"));
        }
        let mut involution_classes = Vec::with_capacity(json.involution_classes.len());
        for c in &json.involution_classes {
            let rows = c
                .representative_eigenspace
                .iter()
                .map(|row| row.iter().map(|x| parse_q(x)).collect::<Option<Vec<_>>>())
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| corrupt("bad rational"))?;
            if rows.iter().any(|r| r.len() != rs.ambient_dim())
                || c.splitting_roots.iter().any(|&r| r >= rs.num_positive())
            {
                return Err(corrupt("bad dimensions"));
            }
            let key = EigenKey(rows);
            let representative = Involution::from_eigenspace(rs, &key).map_err(|_| corrupt("bad eigenspace"))?;
            if representative.eigenspace_key() != &key || representative.degree() != c.degree {
                return Err(corrupt("eigenspace is not canonical"));
            }
            let splitting = Cube::new(rs, c.splitting_roots.clone()).map_err(|_| corrupt("bad splitting"))?;
            if involution_from_cube(&splitting) != representative || split_involution(&representative)? != splitting {
                return Err(corrupt("splitting does not match representative"));
            }
            involution_classes.push(InvolutionClass {
                id: c.id.clone(),
                degree: c.degree,
                size: c.size,
                representative,
                splitting,
            });
        }
        let mut cube_classes = Vec::with_capacity(json.cube_classes.len());
        for c in &json.cube_classes {
            if c.representative.iter().any(|&r| r >= rs.num_positive()) {
                return Err(corrupt("bad cube root"));
            }
            let representative = Cube::new(rs, c.representative.clone()).map_err(|_| corrupt("bad cube"))?;
            if representative.rank() != c.rank {
                return Err(corrupt("cube rank mismatch"));
            }
            cube_classes.push(CubeClass { id: c.id.clone(), rank: c.rank, size: c.size, representative });
        }
        let total: u64 = involution_classes.iter().map(|c| c.size).sum();
        if total != json.involution_count {
            return Err(corrupt("class sizes do not add up"));
        }
        Ok(Atlas {
            rs: Arc::clone(rs),
            group_order: json.group_order,
            involution_count: json.involution_count,
            involution_classes,
            cube_classes,
        })
    }
}

pub fn cache_path(dir: &Path, rs: &RootSystem) -> PathBuf {
    dir.join(format!("{}.json", rs.spec()))
}

/// Loads the atlas from `dir` or computes and stores it. A cache file that
/// fails to parse or validate is recomputed with a warning.
pub fn load_or_compute(rs: &Arc<RootSystem>, dir: Option<&Path>) -> Result<Atlas> {
    let Some(dir) = dir else {
        return Atlas::compute(rs);
    };
    let path = cache_path(dir, rs);
    if let Ok(bytes) = fs::read(&path) {
        let parsed = serde_json::from_slice::<AtlasJson>(&bytes)
            .map_err(|e| Error::Parse(e.to_string()))
            .and_then(|json| Atlas::from_json(rs, &json));
        match parsed {
            Ok(atlas) => return Ok(atlas),
            Err(e) => log::warn!("ignoring corrupt cache {}: {e}; recomputing", path.display()),
        }
    }
    let atlas = Atlas::compute(rs)?;
    let mut text = serde_json::to_string_pretty(&atlas.to_json()).map_err(|e| Error::Internal(e.to_string()))?;
    text.push('\n');
    if let Err(e) = fs::create_dir_all(dir).and_then(|_| fs::write(&path, text)) {
        log::warn!("could not write cache {}: {e}", path.display());
    }
    Ok(atlas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::build_root_system;

    #[test]
    fn cache_round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let rs = Arc::new(build_root_system(&"F4".parse().unwrap()).unwrap());
        let a = load_or_compute(&rs, Some(dir.path())).unwrap();
        let path = cache_path(dir.path(), &rs);
        let first = fs::read(&path).unwrap();
        let b = load_or_compute(&rs, Some(dir.path())).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(fs::read(&path).unwrap(), first);

        fs::write(&path, b"{not json").unwrap();
        let c = load_or_compute(&rs, Some(dir.path())).unwrap();
        assert_eq!(c.to_json(), a.to_json());
        assert_eq!(fs::read(&path).unwrap(), first);

        // tampered size
        let mut json: AtlasJson = serde_json::from_slice(&first).unwrap();
        json.involution_classes[1].size += 1;
        assert!(Atlas::from_json(&rs, &json).is_err());
        let mut json: AtlasJson = serde_json::from_slice(&first).unwrap();
        json.involution_classes[2].splitting_roots.reverse();
        json.involution_classes[2].splitting_roots.push(0);
        assert!(Atlas::from_json(&rs, &json).is_err());
    }
}

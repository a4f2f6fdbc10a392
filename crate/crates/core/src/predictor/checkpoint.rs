use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{MlpParams, OutputTransform};
use crate::numerics::{DenseMatrix, DenseVector};
use crate::{Error, Result, Scalar};

/// Checkpoint layout: `checkpoint.bin` holds every tensor as consecutive
/// little-endian `f64` values, in manifest order; the JSON manifest records
/// names, shapes and byte offsets plus the architecture hyperparameters.
#[derive(Debug, Serialize, Deserialize)]
struct Manifest {
    dtype: String,
    layer_dims: Vec<usize>,
    leaky_slope: f64,
    output: String,
    tensors: Vec<TensorEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TensorEntry {
    name: String,
    shape: Vec<usize>,
    offset_bytes: usize,
    len: usize,
}

pub fn save_checkpoint<S: Scalar>(
    params: &MlpParams<S>,
    bin_path: &Path,
    manifest_path: &Path,
) -> Result<()> {
    let mut blob: Vec<u8> = Vec::new();
    let mut tensors = Vec::new();

    let mut push_tensor = |name: String, shape: Vec<usize>, values: &[S], blob: &mut Vec<u8>| {
        let offset_bytes = blob.len();
        for v in values {
            blob.extend_from_slice(&v.to_f64().unwrap().to_le_bytes());
        }
        tensors.push(TensorEntry {
            name,
            shape,
            offset_bytes,
            len: values.len(),
        });
    };

    for l in 0..params.num_layers() {
        let w = &params.weights()[l];
        push_tensor(
            format!("w{l}"),
            vec![w.rows(), w.cols()],
            w.as_slice(),
            &mut blob,
        );
        let b = &params.biases()[l];
        push_tensor(format!("b{l}"), vec![b.len()], b.as_slice(), &mut blob);
    }

    let manifest = Manifest {
        dtype: "f64-le".into(),
        layer_dims: params.layer_dims().to_vec(),
        leaky_slope: params.leaky_slope().to_f64().unwrap(),
        output: match params.output_transform() {
            OutputTransform::Identity => "identity".into(),
            OutputTransform::Softplus => "softplus".into(),
        },
        tensors,
    };

    fs::write(bin_path, &blob)?;
    fs::write(manifest_path, serde_json::to_vec_pretty(&manifest)?)?;
    Ok(())
}

pub fn load_checkpoint<S: Scalar>(bin_path: &Path, manifest_path: &Path) -> Result<MlpParams<S>> {
    let manifest: Manifest = serde_json::from_slice(&fs::read(manifest_path)?)?;
    if manifest.dtype != "f64-le" {
        return Err(Error::Config(format!(
            "unsupported checkpoint dtype {}",
            manifest.dtype
        )));
    }
    let blob = fs::read(bin_path)?;

    let read_values = |entry: &TensorEntry| -> Result<Vec<S>> {
        let end = entry.offset_bytes + entry.len * 8;
        let bytes = blob.get(entry.offset_bytes..end).ok_or_else(|| Error::Config(
            format!("checkpoint tensor {} out of range", entry.name),
        ))?;
        Ok(bytes
            .chunks_exact(8)
            .map(|c| S::of(f64::from_le_bytes(c.try_into().unwrap())))
            .collect())
    };

    let layers = manifest.layer_dims.len() - 1;
    let mut weights = Vec::with_capacity(layers);
    let mut biases = Vec::with_capacity(layers);
    for l in 0..layers {
        let w_entry = manifest
            .tensors
            .iter()
            .find(|t| t.name == format!("w{l}"))
            .ok_or_else(|| Error::Config(format!("missing tensor w{l}")))?;
        let b_entry = manifest
            .tensors
            .iter()
            .find(|t| t.name == format!("b{l}"))
            .ok_or_else(|| Error::Config(format!("missing tensor b{l}")))?;
        weights.push(DenseMatrix::from_vec(
            w_entry.shape[0],
            w_entry.shape[1],
            read_values(w_entry)?,
        ));
        biases.push(DenseVector::from_vec(read_values(b_entry)?));
    }

    let output = match manifest.output.as_str() {
        "identity" => OutputTransform::Identity,
        "softplus" => OutputTransform::Softplus,
        other => {
            return Err(Error::Config(format!(
                "unknown output transform `{other}` in checkpoint"
            )))
        }
    };
    MlpParams::new(
        manifest.layer_dims,
        weights,
        biases,
        S::of(manifest.leaky_slope),
        output,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predictor::kaiming_uniform;

    #[test]
    fn round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let bin = dir.path().join("checkpoint.bin");
        let man = dir.path().join("checkpoint.json");
        let params: MlpParams<f64> =
            kaiming_uniform(&[9, 32, 4], 0.01, OutputTransform::Softplus, 77).unwrap();
        save_checkpoint(&params, &bin, &man).unwrap();
        let loaded: MlpParams<f64> = load_checkpoint(&bin, &man).unwrap();
        assert_eq!(params, loaded);
    }
}

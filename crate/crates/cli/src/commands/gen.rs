use holopipe::imagecore::SplitTag;
use holopipe::scenegen::generate_dataset;

use crate::args::GenArgs;
use crate::config::PipelineConfig;
use crate::error::CliResult;

pub fn run(args: GenArgs, mut config: PipelineConfig) -> CliResult<()> {
    let scene = &mut config.scene;
    if let Some(shape) = &args.shape {
        scene.shape = shape.parse()?;
    }
    if let Some(v) = args.views {
        scene.view_count = v;
    }
    if let Some(w) = args.width {
        scene.width = w;
    }
    if let Some(h) = args.height {
        scene.height = h;
    }
    if args.nominal_span {
        scene.use_nominal_span();
    }
    if let Some(seed) = args.seed {
        config.seed = Some(seed);
        config.apply_seed();
    }
    config.validate()?;
    let out = args.out.unwrap_or(config.paths.data);
    let manifest = generate_dataset(&config.scene, &out)?;
    println!(
        "gen: {} {} views ({} train / {} test) written to {}",
        manifest.view_count,
        manifest.object_name,
        manifest.count(SplitTag::Train),
        manifest.count(SplitTag::Test),
        out.display()
    );
    Ok(())
}

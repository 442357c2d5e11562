use std::io;

fn main() {
    let status = wkit_cli::run(
        std::env::args_os(),
        &mut io::stdout().lock(),
        &mut io::stderr(),
    );
    std::process::exit(status);
}

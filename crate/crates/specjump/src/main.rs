fn main() {
    std::process::exit(cli::run(std::env::args_os()));
}

mod cli;
mod output;
mod schema;

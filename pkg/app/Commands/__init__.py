from app.Commands.certify import CertifyCommand
from app.Commands.check import CheckCommand
from app.Commands.member import MemberCommand
from app.Commands.oracle import OracleCommand
from app.Commands.theorem1 import Theorem1Command
from app.Commands.verify import VerifyCommand

COMMANDS = {
    command.name: command
    for command in (MemberCommand, VerifyCommand, CertifyCommand, CheckCommand, Theorem1Command, OracleCommand)
}
